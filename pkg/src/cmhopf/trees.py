"""Decorated planar rooted trees for the delta generators.

The root of a tree carries three indices ``(k; j, i)``, every other vertex one
index.  ``tree_expand`` writes delta^k_{ji,a} as a sum of |a|! planar trees by
attaching each new tail index as the rightmost child of every vertex.

A cut severs an edge, identified by its lower vertex.  The vertex above the cut
hands one of its indices to the severed branch, whose root then carries
``(s; picked, label)`` with ``s`` summed over 1..dim:

* a root-like vertex ``(k; j, i)`` gives three terms: pick ``j`` (root becomes
  ``(k; s, i)``), pick ``i`` (root becomes ``(k; j, s)``), or pick ``k`` with a
  minus sign (branch root ``(k; s, label)``, root becomes ``(s; j, i)``);
* an ordinary vertex ``l`` gives one term, and its index becomes ``s``.

Several cuts are applied one after another, sorted top to bottom and then
left to right, each reading the current indices of the vertex above it.

A piece whose root is ``(k; j, i)`` with remaining labels ``L`` is evaluated
as ``delta^k_{ji,L} / |L|!``; this assigns every planar tree of an expansion
the same share of its delta, so expansions evaluate to their delta exactly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, NamedTuple, Sequence

from .hopf import D, Gen, HopfAlgebra, HopfPoly, Tensor


@dataclass(frozen=True)
class Node:
    """A vertex with its label and ordered children."""

    label: tuple[int, ...]
    children: tuple[Node, ...] = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def attach_everywhere(self, index: int) -> Iterator[Node]:
        """Every tree obtained by adding a rightmost child ``index`` to one vertex (preorder)."""
        yield Node(self.label, self.children + (Node((index,)),))
        for n, child in enumerate(self.children):
            for grown in child.attach_everywhere(index):
                yield Node(self.label, self.children[:n] + (grown,) + self.children[n + 1:])

    def labels(self) -> list[tuple[int, ...]]:
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    def __str__(self) -> str:
        return format_tree(self)


TreeSum = Counter  # Counter[Node], planar trees with integer multiplicity


def root_tree(k: int, j: int, i: int) -> Node:
    return Node((k, j, i))


def chain(A: tuple[int, int, int], *labels: int) -> Node:
    """The root with a single descending path of the given labels."""
    node = None
    for lab in reversed(labels):
        node = Node((lab,), (node,) if node else ())
    return Node(tuple(A), (node,) if node else ())


def fork(A: tuple[int, int, int], *labels: int) -> Node:
    """The root with the given labels as leaves, left to right."""
    return Node(tuple(A), tuple(Node((lab,)) for lab in labels))


@lru_cache(maxsize=None)
def _expand(A: tuple[int, int, int], tail: tuple[int, ...]) -> tuple[tuple[Node, int], ...]:
    if not tail:
        return ((root_tree(*A), 1),)
    acc: Counter = Counter()
    for tree, mult in _expand(A, tail[:-1]):
        for grown in tree.attach_everywhere(tail[-1]):
            acc[grown] += mult
    return tuple(acc.items())


def tree_expand(A: tuple[int, int, int], tail: Sequence[int]) -> TreeSum:
    """delta^A_tail as a sum of planar trees (with multiplicity), tail order respected."""
    return Counter(dict(_expand(tuple(A), tuple(tail))))


def tree_count(ts: TreeSum) -> int:
    return sum(ts.values())


# -- flattened view ----------------------------------------------------------------------


class Flat(NamedTuple):
    labels: tuple[tuple[int, ...], ...]  # preorder
    parent: tuple[int, ...]  # parent[0] = -1
    depth: tuple[int, ...]


def flatten(tree: Node) -> Flat:
    labels: list = []
    parent: list = []
    depth: list = []

    def walk(node: Node, par: int, d: int) -> None:
        me = len(labels)
        labels.append(node.label)
        parent.append(par)
        depth.append(d)
        for c in node.children:
            walk(c, me, d + 1)

    walk(tree, -1, 0)
    return Flat(tuple(labels), tuple(parent), tuple(depth))


def _ancestors(flat: Flat, v: int) -> Iterator[int]:
    v = flat.parent[v]
    while v >= 0:
        yield v
        v = flat.parent[v]


def all_cuts(tree: Node) -> list[frozenset[int]]:
    """Every non-empty set of edges, each edge named by its lower vertex."""
    edges = range(1, tree.size())
    return [frozenset(c) for r in range(1, len(edges) + 1) for c in combinations(edges, r)]


def is_admissible(tree: Node, cut: frozenset[int]) -> bool:
    """At most one cut edge on every path from a leaf to the root."""
    flat = flatten(tree)
    return not any(a in cut for v in cut for a in _ancestors(flat, v))


def admissible_cuts(tree: Node) -> list[frozenset[int]]:
    return [c for c in all_cuts(tree) if is_admissible(tree, c)]


def cut_order(tree: Node, cut: frozenset[int]) -> list[int]:
    """Top to bottom, then left to right."""
    flat = flatten(tree)
    return sorted(cut, key=lambda v: (flat.depth[v], v))


# -- applying cuts ----------------------------------------------------------------------------


class CutTerm(NamedTuple):
    """One signed outcome of a multiple cut: branch generators and the trunk generator."""

    sign: int
    branches: tuple[Gen, ...]
    trunk: Gen

    def pieces(self) -> tuple[Gen, ...]:
        return self.branches + (self.trunk,)


def single_cut(
    state: tuple[tuple[int, ...], ...], above: int, below: int, dim: int
) -> list[tuple[int, tuple[tuple[int, ...], ...]]]:
    """All signed index movements for cutting the edge between ``above`` and ``below``.

    ``state`` holds the current label of every vertex.  The returned states give
    ``below`` its three-index branch-root label and rewrite the label of ``above``.
    """
    cur = state[above]
    low = state[below]
    if len(low) != 1:
        raise ValueError("the lower vertex of a cut must still carry a single index")
    d_c = low[0]
    out = []
    for s in range(1, dim + 1):
        if len(cur) == 3:
            k, j, i = cur
            options = [
                (1, (s, j, d_c), (k, s, i)),
                (1, (s, i, d_c), (k, j, s)),
                (-1, (k, s, d_c), (s, j, i)),
            ]
        else:
            options = [(1, (s, cur[0], d_c), (s,))]
        for sign, branch_label, new_above in options:
            nxt = list(state)
            nxt[above] = new_above
            nxt[below] = branch_label
            out.append((sign, tuple(nxt)))
    return out


def apply_cut(tree: Node, cut: frozenset[int], dim: int) -> list[CutTerm]:
    """Expand a multiple cut into signed products of pieces, summation indices expanded."""
    flat = flatten(tree)
    order = cut_order(tree, cut)
    states: list[tuple[int, tuple]] = [(1, flat.labels)]
    for v in order:
        nxt = []
        for sign, st in states:
            for s2, st2 in single_cut(st, flat.parent[v], v, dim):
                nxt.append((sign * s2, st2))
        states = nxt
    # piece root of every vertex: nearest cut vertex or the root
    piece_root = []
    for v in range(len(flat.labels)):
        r = v
        while r != 0 and r not in cut:
            r = flat.parent[r]
        piece_root.append(r)
    out = []
    for sign, st in states:
        tails: dict[int, list[int]] = {r: [] for r in set(piece_root)}
        for v, r in enumerate(piece_root):
            if v != r:
                tails[r].append(st[v][0])
        gens = {r: D(*st[r], tails[r]) for r in tails}
        branches = tuple(sorted(gens[r] for r in gens if r != 0))
        out.append(CutTerm(sign, branches, gens[0]))
    return out


# -- evaluation into the Hopf algebra ------------------------------------------------------------


def piece_value(g: Gen, dim: int) -> HopfPoly:
    """The share of delta carried by one planar piece with root ``g`` and |tail| other vertices."""
    return HopfPoly.gen(dim, g, Fraction(1, factorial(len(g.tail))))


def evaluate_tree(tree: Node, dim: int) -> HopfPoly:
    flat = flatten(tree)
    return piece_value(D(*flat.labels[0], [lab[0] for lab in flat.labels[1:]]), dim)


def evaluate(ts: TreeSum, dim: int) -> HopfPoly:
    """Cut-free evaluation of a tree sum as an element of the delta subalgebra."""
    out = HopfPoly.zero(dim)
    for tree, mult in ts.items():
        if mult:
            out = out + evaluate_tree(tree, dim) * mult
    return out


def _product(gens: Sequence[Gen], dim: int) -> HopfPoly:
    out = HopfPoly.one(dim)
    for g in gens:
        out = out * piece_value(g, dim)
    return out


def coproduct_treesum(ts: TreeSum, dim: int) -> Tensor:
    """Primitive part plus the sum over admissible cuts of branches (x) trunk."""
    value = evaluate(ts, dim)
    out = Tensor.pure(dim, value, 1) + Tensor.pure(dim, 1, value)
    for tree, mult in ts.items():
        for cut in admissible_cuts(tree):
            for term in apply_cut(tree, cut, dim):
                out = out + Tensor.pure(
                    dim, _product(term.branches, dim), piece_value(term.trunk, dim)
                ) * (term.sign * mult)
    return out


def antipode_treesum(ts: TreeSum, dim: int) -> HopfPoly:
    """``-delta - sum over all non-empty cuts of (-1)^|C| times the product of all pieces``."""
    out = -evaluate(ts, dim)
    for tree, mult in ts.items():
        for cut in all_cuts(tree):
            sign = -1 if len(cut) % 2 else 1
            for term in apply_cut(tree, cut, dim):
                out = out - _product(term.pieces(), dim) * (sign * term.sign * mult)
    return out


def coproduct_tree(A: tuple[int, int, int], tail: Sequence[int], dim: int) -> Tensor:
    return coproduct_treesum(tree_expand(A, tail), dim)


def antipode_tree(A: tuple[int, int, int], tail: Sequence[int], dim: int) -> HopfPoly:
    return antipode_treesum(tree_expand(A, tail), dim)


def check_rel(A: tuple[int, int, int], l: int, m: int, dim: int) -> bool:
    """chain(l,m) + fork(l,m) - chain(m,l) - fork(m,l) represents zero.

    Checked on the cut-free value and, more sharply, on the cut sums: the
    coproduct and antipode built from the two planar expansions agree.
    """
    lm = tree_expand(A, (l, m))
    ml = tree_expand(A, (m, l))
    diff = Counter(lm)
    diff.subtract(ml)
    return (
        evaluate(diff, dim).is_zero()
        and coproduct_treesum(lm, dim) == coproduct_treesum(ml, dim)
        and antipode_treesum(lm, dim) == antipode_treesum(ml, dim)
    )


def agrees_with_recursion(A: tuple[int, int, int], tail: Sequence[int], H: HopfAlgebra) -> tuple[bool, bool]:
    """(coproduct agrees, antipode agrees) between the tree formulas and the Hopf recursion."""
    g = D(*A, tail)
    return (
        coproduct_tree(A, tail, H.dim) == H.coproduct(H.gen(g)),
        antipode_tree(A, tail, H.dim) == H.antipode(H.gen(g)),
    )


# -- text syntax and renderers ------------------------------------------------------------------


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def format_tree(tree: Node) -> str:
    """``t(k;j,i)(l(m))`` style: the chain; ``t(k;j,i)(l)(m)`` is the fork."""
    k, j, i = tree.label

    def sub(node: Node) -> str:
        return f"({node.label[0]}" + "".join(sub(c) for c in node.children) + ")"

    return f"t({k};{j},{i})" + "".join(sub(c) for c in tree.children)


def parse_tree(text: str, dim: int | None = None) -> Node:
    s = text.replace(" ", "")
    pos = 0

    def expect(ch: str) -> None:
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            raise TreeSyntaxError(f"expected {ch!r}", pos)
        pos += 1

    def integer() -> int:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise TreeSyntaxError("expected an integer", pos)
        v = int(s[start:pos])
        if dim is not None and not 1 <= v <= dim:
            raise TreeSyntaxError(f"index {v} exceeds dim {dim}", start)
        return v

    def children() -> tuple[Node, ...]:
        nonlocal pos
        out = []
        while pos < len(s) and s[pos] == "(":
            pos += 1
            lab = integer()
            kids = children()
            expect(")")
            out.append(Node((lab,), kids))
        return tuple(out)

    expect("t")
    expect("(")
    k = integer()
    expect(";")
    j = integer()
    expect(",")
    i = integer()
    expect(")")
    tree = Node((k, j, i), children())
    if pos != len(s):
        raise TreeSyntaxError("trailing input", pos)
    return tree


def format_treesum(ts: TreeSum) -> str:
    items = sorted(((t, m) for t, m in ts.items() if m), key=lambda kv: format_tree(kv[0]))
    if not items:
        return "0"
    parts = []
    for n, (t, m) in enumerate(items):
        body = format_tree(t) if abs(m) == 1 else f"{abs(m)} {format_tree(t)}"
        if n == 0:
            parts.append(body if m > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if m > 0 else f" - {body}")
    return "".join(parts)


def parse_treesum(text: str, dim: int | None = None) -> TreeSum:
    import re

    out: Counter = Counter()
    pieces = re.split(r"\s+([+-])\s+", " " + text.strip() + " ")
    first = pieces[0].strip()
    signed = [("+", first)] + list(zip(pieces[1::2], pieces[2::2]))
    for sign, body in signed:
        body = body.strip()
        if body.startswith("-"):
            sign = "-" if sign == "+" else "+"
            body = body[1:].strip()
        mult = 1
        m = re.match(r"^(\d+)\s+(t.*)$", body)
        if m:
            mult, body = int(m.group(1)), m.group(2)
        out[parse_tree(body, dim)] += mult if sign == "+" else -mult
    return +out if all(v >= 0 for v in out.values()) else out


def ascii_tree(tree: Node) -> str:
    k, j, i = tree.label
    lines = [f"({k};{j},{i})"]

    def walk(node: Node, prefix: str, last: bool) -> None:
        lines.append(prefix + ("`-- " if last else "|-- ") + str(node.label[0]))
        ext = prefix + ("    " if last else "|   ")
        for n, c in enumerate(node.children):
            walk(c, ext, n == len(node.children) - 1)

    for n, c in enumerate(tree.children):
        walk(c, "", n == len(tree.children) - 1)
    return "\n".join(lines)


def latex_tree(tree: Node, cut: frozenset[int] = frozenset()) -> str:
    """A ``picture`` environment in the style of hand-drawn decorated trees."""
    flat = flatten(tree)
    # horizontal slot: leaves left to right, inner vertices centred over children
    xpos: dict[int, float] = {}
    counter = [0]
    kids: dict[int, list[int]] = {v: [] for v in range(len(flat.labels))}
    for v in range(1, len(flat.labels)):
        kids[flat.parent[v]].append(v)

    def place(v: int) -> float:
        if not kids[v]:
            xpos[v] = counter[0] * 7.0
            counter[0] += 1
        else:
            xs = [place(c) for c in kids[v]]
            xpos[v] = (xs[0] + xs[-1]) / 2
        return xpos[v]

    place(0)
    depth = max(flat.depth)
    height = 7 * depth + 4
    width = max(xpos.values()) + 8
    out = [f"\\begin{{picture}}({width:g},{height:g})"]
    for v, lab in enumerate(flat.labels):
        x, y = xpos[v], height - 3 - 7 * flat.depth[v]
        text = f"^{{{lab[0]}}}_{{{lab[1]}{lab[2]}}}" if v == 0 else f"_{{{lab[0]}}}"
        out.append(f"\\put({x:g},{y:g}){{$\\bullet~{text}$}}")
        if v:
            px, py = xpos[flat.parent[v]], height - 3 - 7 * flat.depth[flat.parent[v]]
            out.append(f"\\qbezier({px + 1:g},{py + 1:g})({(px + x) / 2 + 1:g},{(py + y) / 2 + 1:g})({x + 1:g},{y + 1:g})")
            if v in cut:
                out.append(f"\\put({(px + x) / 2 - 1:g},{(py + y) / 2:g}){{---}}")
    out.append("\\end{picture}")
    return "\n".join(out)


def tree_to_json(tree: Node) -> dict:
    flat = flatten(tree)
    return {
        "vertices": [{"id": v, "label": list(lab)} for v, lab in enumerate(flat.labels)],
        "edges": [[flat.parent[v], v] for v in range(1, len(flat.labels))],
    }


def tree_from_json(data: dict) -> Node:
    labels = {v["id"]: tuple(v["label"]) for v in data["vertices"]}
    kids: dict[int, list[int]] = {v: [] for v in labels}
    for p, c in data["edges"]:
        kids[p].append(c)

    def build(v: int) -> Node:
        return Node(labels[v], tuple(build(c) for c in kids[v]))

    return build(0)


def treesum_to_json(ts: TreeSum) -> str:
    items = sorted(((t, m) for t, m in ts.items() if m), key=lambda kv: format_tree(kv[0]))
    return json.dumps([{"multiplicity": m, "tree": tree_to_json(t)} for t, m in items])
