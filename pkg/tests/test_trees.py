from __future__ import annotations

from collections import Counter
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmhopf import trees
from cmhopf.hopf import D, HopfAlgebra, Tensor
from cmhopf.trees import (
    Node,
    TreeSyntaxError,
    admissible_cuts,
    all_cuts,
    apply_cut,
    chain,
    fork,
    format_tree,
    parse_tree,
    parse_treesum,
    tree_expand,
)

H1 = HopfAlgebra(1)
H2 = HopfAlgebra(2)


def pieces_tensor(H: HopfAlgebra, terms) -> Tensor:
    out = Tensor(H.dim, 2)
    for t in terms:
        left = H.one()
        for g in t.branches:
            left = left * trees.piece_value(g, H.dim)
        out = out + H.tensor(left, trees.piece_value(t.trunk, H.dim)) * t.sign
    return out


def literal_tensor(H: HopfAlgebra, terms) -> Tensor:
    out = Tensor(H.dim, 2)
    for c, left, right in terms:
        out = out + H.tensor(H.gen(left), H.gen(right)) * c
    return out


# -- expansion ------------------------------------------------------------------------------


def test_expansion_examples():
    assert tree_expand((1, 1, 2), ()) == Counter({Node((1, 1, 2)): 1})
    assert tree_expand((1, 1, 2), (1, 2)) == Counter({chain((1, 1, 2), 1, 2): 1, fork((1, 1, 2), 1, 2): 1})
    assert trees.tree_count(tree_expand((1, 1, 2), (1, 2, 2))) == 6


def test_equal_labels_give_multiplicity():
    ts = tree_expand((1, 1, 1), (1, 1, 1))
    assert trees.tree_count(ts) == 6
    assert len(ts) < 6  # coinciding planar trees are stored once with multiplicity


@pytest.mark.parametrize("length", range(5))
def test_tree_count_is_factorial(length):
    from math import factorial

    for tail in product((1, 2), repeat=length):
        assert trees.tree_count(tree_expand((2, 1, 2), tail)) == factorial(length)


# -- cuts -------------------------------------------------------------------------------------


def test_chain_lower_edge_cut():
    k, j, i, l, m = 2, 1, 2, 1, 2
    got = pieces_tensor(H2, apply_cut(chain((k, j, i), l, m), frozenset({2}), 2))
    want = literal_tensor(H2, [(1, D(a, l, m), D(k, j, i, (a,))) for a in (1, 2)])
    assert got == want


def test_chain_upper_edge_cut():
    k, j, i, l, m = 1, 1, 2, 2, 1
    got = pieces_tensor(H2, apply_cut(chain((k, j, i), l, m), frozenset({1}), 2))
    want = literal_tensor(
        H2,
        [
            t
            for a in (1, 2)
            for t in (
                (1, D(a, j, l, (m,)), D(k, a, i)),
                (1, D(a, i, l, (m,)), D(k, j, a)),
                (-1, D(k, a, l, (m,)), D(a, j, i)),
            )
        ],
    )
    assert got == want


def test_fork_single_cut():
    k, j, i, l, m = 1, 2, 2, 1, 2
    got = pieces_tensor(H2, apply_cut(fork((k, j, i), l, m), frozenset({1}), 2))
    want = literal_tensor(
        H2,
        [
            t
            for a in (1, 2)
            for t in (
                (1, D(a, j, l), D(k, a, i, (m,))),
                (1, D(a, i, l), D(k, j, a, (m,))),
                (-1, D(k, a, l), D(a, j, i, (m,))),
            )
        ],
    )
    assert got == want


def test_cut_enumeration_sizes():
    t = chain((1, 1, 2), 1, 2, 1)
    assert len(all_cuts(t)) == 2**3 - 1
    assert len(admissible_cuts(t)) == 3
    f = fork((1, 1, 2), 1, 2, 2)
    assert len(admissible_cuts(f)) == len(all_cuts(f)) == 7


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=4), st.integers(0, 100))
def test_admissible_cuts_have_one_cut_per_path(tail, pick):
    ts = tree_expand((1, 1, 2), tail)
    tree = sorted(ts, key=format_tree)[pick % len(ts)]
    flat = trees.flatten(tree)
    edges = len(flat.labels) - 1
    assert len(all_cuts(tree)) == 2**edges - 1
    for cut in admissible_cuts(tree):
        for v in cut:
            ancestors = set(trees._ancestors(flat, v))
            assert not (ancestors & (cut - {v}))


def test_cut_order_is_top_down_then_left_to_right():
    t = chain((1, 1, 2), 1, 2)
    assert trees.cut_order(t, frozenset({1, 2})) == [1, 2]
    f = fork((1, 1, 2), 2, 1)
    assert trees.cut_order(f, frozenset({1, 2})) == [1, 2]


def test_single_cut_below_a_non_root_vertex():
    out = trees.single_cut(((1, 1, 2), (2,), (1,)), 1, 2, 2)
    assert [(s, st[1], st[2]) for s, st in out] == [(1, (1,), (1, 2, 1)), (1, (2,), (2, 2, 1))]


# -- agreement with the recursion ----------------------------------------------------------------


@pytest.mark.parametrize("tail", [(), (1,), (2, 1), (1, 2, 2)])
def test_tree_formulas_match_recursion(tail):
    for A in H2.root_labels():
        assert trees.agrees_with_recursion(A, tail, H2) == (True, True)


@pytest.mark.parametrize("tail", [(1,), (1, 1), (1, 1, 1), (1, 1, 1, 1)])
def test_dimension_one_trees_match_recursion(tail):
    assert trees.agrees_with_recursion((1, 1, 1), tail, H1) == (True, True)


def test_counit_compatibility():
    for A, tail in [((1, 1, 2), (2,)), ((2, 1, 1), (1, 2)), ((1, 2, 2), (2, 1, 1))]:
        cop = trees.coproduct_tree(A, tail, 2)
        value = H2.gen(D(*A, tail))
        assert H2.counit_left(cop) == value
        assert H2.counit_right(cop) == value


def test_chain_fork_relation_examples():
    for A in H2.root_labels():
        assert trees.check_rel(A, 1, 2, 2)
        assert trees.check_rel(A, 2, 2, 2)


def test_permuting_the_tail_keeps_the_cut_sums():
    A = (1, 1, 2)
    base = (1, 2, 2)
    ref_cop = trees.coproduct_tree(A, base, 2)
    ref_s = trees.antipode_tree(A, base, 2)
    for perm in set(permutations(base)):
        assert trees.evaluate(tree_expand(A, perm), 2) == H2.gen(D(*A, base))
        assert trees.coproduct_tree(A, perm, 2) == ref_cop
        assert trees.antipode_tree(A, perm, 2) == ref_s


# -- syntax and renderers ----------------------------------------------------------------------


def test_tree_syntax():
    assert format_tree(chain((1, 1, 2), 1, 2)) == "t(1;1,2)(1(2))"
    assert format_tree(fork((1, 1, 2), 1, 2)) == "t(1;1,2)(1)(2)"
    assert parse_tree("t(1;1,2)(1(2))") == chain((1, 1, 2), 1, 2)
    assert parse_tree(" t( 1 ; 1 , 2 ) ( 1 ) ( 2 ) ") == fork((1, 1, 2), 1, 2)
    with pytest.raises(TreeSyntaxError):
        parse_tree("t(1;1,2)(1")
    with pytest.raises(ValueError):
        parse_tree("t(1;1,3)", dim=2)


def test_treesum_syntax():
    ts = tree_expand((1, 1, 2), (2, 1))
    text = trees.format_treesum(ts)
    assert text == "t(1;1,2)(2(1)) + t(1;1,2)(2)(1)"
    assert parse_treesum(text) == ts
    assert parse_treesum(trees.format_treesum(tree_expand((1, 1, 1), (1, 1, 1)))) == tree_expand((1, 1, 1), (1, 1, 1))


def test_ascii_and_latex():
    assert trees.ascii_tree(chain((1, 1, 2), 1, 2)) == "(1;1,2)\n`-- 1\n    `-- 2"
    latex = trees.latex_tree(fork((1, 1, 2), 1, 2), frozenset({1}))
    assert latex.startswith("\\begin{picture}") and latex.endswith("\\end{picture}")
    assert latex.count("\\qbezier") == 2 and latex.count("---") == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), max_size=4), st.integers(0, 100))
def test_tree_round_trips(tail, pick):
    ts = tree_expand((3, 1, 2), tail)
    tree = sorted(ts, key=format_tree)[pick % len(ts)]
    assert parse_tree(format_tree(tree), dim=3) == tree
    assert trees.tree_from_json(trees.tree_to_json(tree)) == tree
