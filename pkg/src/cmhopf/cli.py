"""Command-line front end: ``cm nf|coproduct|antipode|trees|cuts|verify``.

Exit codes: 0 on success, 1 when a verification or method comparison fails,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from . import trees
from .hopf import DK, HopfAlgebra, HopfPoly, IndexOutOfRange, Tensor
from .syntax import ExprSyntaxError, gen_to_json, parse_generator, parse_poly, render
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Raised for inputs that parse but cannot be used by the requested command."""


@dataclass(frozen=True)
class SessionConfig:
    dim: int = 2
    max_tail: int | None = None
    max_degree: int = 3
    seed: int = 0
    format: str = "text"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise UsageError("--dim must be >= 1")
        if (self.max_tail is not None and self.max_tail < 0) or self.max_degree < 0:
            raise UsageError("--max-tail and --max-degree must be >= 0")


def _config(args: argparse.Namespace) -> SessionConfig:
    return SessionConfig(args.dim, args.max_tail, args.max_degree, args.seed, args.format)


def _emit(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


# -- algebra commands ---------------------------------------------------------------------


def cmd_nf(expr: str, cfg: SessionConfig) -> int:
    _emit(render(parse_poly(expr, cfg.dim), cfg.format))
    return EXIT_OK


def _single_delta(expr: str, dim: int):
    g = parse_generator(expr, dim)
    if g.kind != DK:
        raise UsageError("--via trees needs a single delta generator such as d(1;1,2;1)")
    return g


def _difference_report(name: str, tree_value, rec_value) -> str:
    diff = tree_value - rec_value
    return f"error: {name} by trees and by recursion disagree; trees - recursion = {render(diff)}"


def _by_method(kind: str, expr: str, cfg: SessionConfig, via: str, check_agree: bool) -> int:
    H = HopfAlgebra(cfg.dim)
    op = H.coproduct if kind == "coproduct" else H.antipode
    by_tree = trees.coproduct_tree if kind == "coproduct" else trees.antipode_tree
    if via == "trees" or check_agree:
        g = _single_delta(expr, cfg.dim)
        tree_value = by_tree(g.idx, g.tail, cfg.dim)
        if check_agree:
            rec_value = op(H.gen(g))
            if tree_value != rec_value:
                print(_difference_report(kind, tree_value, rec_value), file=sys.stderr)
                return EXIT_FAIL
        result: HopfPoly | Tensor = tree_value
    else:
        result = op(parse_poly(expr, cfg.dim))
    _emit(render(result, cfg.format))
    return EXIT_OK


def cmd_coproduct(expr: str, cfg: SessionConfig, via: str = "recursion", check_agree: bool = False) -> int:
    return _by_method("coproduct", expr, cfg, via, check_agree)


def cmd_antipode(expr: str, cfg: SessionConfig, via: str = "recursion", check_agree: bool = False) -> int:
    return _by_method("antipode", expr, cfg, via, check_agree)


# -- tree commands ------------------------------------------------------------------------

_DELTA_TEXT = re.compile(r"^\s*d\(\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*(?:;([\d\s]*))?\)\s*$")


def _ordered_delta(expr: str, dim: int) -> tuple[tuple[int, int, int], tuple[int, ...]]:
    """Root label and tail of a delta, in the order written (tree expansion is order-aware)."""
    parse_generator(expr, dim)  # full validation with positions
    m = _DELTA_TEXT.match(expr)
    if not m:
        raise UsageError("expected a single delta generator such as d(1;1,2;1 2)")
    A = (int(m.group(1)), int(m.group(2)), int(m.group(3)))
    tail = tuple(int(t) for t in (m.group(4) or "").split())
    return A, tail


def cmd_trees(expr: str, cfg: SessionConfig) -> int:
    A, tail = _ordered_delta(expr, cfg.dim)
    ts = trees.tree_expand(A, tail)
    if cfg.format == "json":
        _emit(trees.treesum_to_json(ts))
    elif cfg.format == "latex":
        items = sorted(ts.items(), key=lambda kv: trees.format_tree(kv[0]))
        _emit("\n".join(f"% multiplicity {m}\n{trees.latex_tree(t)}" for t, m in items))
    else:
        _emit(trees.format_treesum(ts))
    return EXIT_OK


def _cut_rows(tree: trees.Node, dim: int, admissible_only: bool) -> list[dict]:
    cuts = trees.admissible_cuts(tree) if admissible_only else trees.all_cuts(tree)
    rows = []
    for cut in cuts:
        rows.append(
            {
                "cut": trees.cut_order(tree, cut),
                "admissible": trees.is_admissible(tree, cut),
                "terms": trees.apply_cut(tree, cut, dim),
            }
        )
    return rows


def cmd_cuts(text: str, cfg: SessionConfig, admissible_only: bool = False) -> int:
    tree = trees.parse_tree(text, cfg.dim)
    rows = _cut_rows(tree, cfg.dim, admissible_only)
    if cfg.format == "json":
        payload = {
            "tree": trees.tree_to_json(tree),
            "cuts": [
                {
                    "cut": r["cut"],
                    "admissible": r["admissible"],
                    "terms": [
                        {
                            "sign": t.sign,
                            "branches": [gen_to_json(g) for g in t.branches],
                            "trunk": gen_to_json(t.trunk),
                        }
                        for t in r["terms"]
                    ],
                }
                for r in rows
            ],
        }
        _emit(json.dumps(payload))
        return EXIT_OK
    if cfg.format == "latex":
        blocks = []
        for r in rows:
            terms = " ".join(
                ("+" if t.sign > 0 else "-")
                + " "
                + "".join(_latex_piece(g) for g in t.branches)
                + r" \otimes "
                + _latex_piece(t.trunk)
                for t in r["terms"]
            )
            blocks.append(trees.latex_tree(tree, frozenset(r["cut"])) + f"\n$${terms}$$")
        _emit("\n".join(blocks))
        return EXIT_OK
    flat = trees.flatten(tree)
    out = [trees.ascii_tree(tree)]
    out.append("vertices: " + " ".join(f"{v}={','.join(map(str, lab))}" for v, lab in enumerate(flat.labels)))
    for r in rows:
        kind = "admissible" if r["admissible"] else "not admissible"
        out.append(f"cut {{{', '.join(map(str, r['cut']))}}} ({kind})")
        for t in r["terms"]:
            branches = " ".join(map(str, t.branches))
            out.append(f"  {'+' if t.sign > 0 else '-'} {branches} | {t.trunk}")
    _emit("\n".join(out))
    return EXIT_OK


def _latex_piece(g) -> str:
    from .syntax import latex_gen

    return latex_gen(g)


# -- verification -------------------------------------------------------------------------


def cmd_verify(suite: str, cfg: SessionConfig) -> int:
    reports = run_suite(suite, cfg.dim, cfg.seed, cfg.max_tail, cfg.max_degree)
    if cfg.format == "json":
        _emit(json.dumps([r.as_dict() for r in reports]))
    else:
        _emit("\n".join(line for r in reports for line in r.lines()))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=2, help="manifold dimension n (default 2)")
    common.add_argument("--format", choices=("text", "latex", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--max-tail", type=int, default=None, help="longest delta tail in suites")
    common.add_argument("--max-degree", type=int, default=3, help="degree of random PBW monomials")

    parser = argparse.ArgumentParser(prog="cm", description="Exact computations in the transverse Hopf algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common], help="PBW normal form of an expression")
    p.add_argument("expr")

    for name in ("coproduct", "antipode"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of an expression")
        p.add_argument("expr")
        p.add_argument("--via", choices=("recursion", "trees"), default="recursion")
        p.add_argument("--check-agree", action="store_true", help="compute by both methods and compare")

    p = sub.add_parser("trees", parents=[common], help="expand a delta generator into planar trees")
    p.add_argument("expr")

    p = sub.add_parser("cuts", parents=[common], help="enumerate the cuts of a decorated tree")
    p.add_argument("tree", help="for example t(1;1,2)(1(2))")
    p.add_argument("--admissible-only", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "nf":
            return cmd_nf(args.expr, cfg)
        if args.command == "coproduct":
            return cmd_coproduct(args.expr, cfg, args.via, args.check_agree)
        if args.command == "antipode":
            return cmd_antipode(args.expr, cfg, args.via, args.check_agree)
        if args.command == "trees":
            return cmd_trees(args.expr, cfg)
        if args.command == "cuts":
            return cmd_cuts(args.tree, cfg, args.admissible_only)
        return cmd_verify(args.suite, cfg)
    except (ExprSyntaxError, IndexOutOfRange, trees.TreeSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
