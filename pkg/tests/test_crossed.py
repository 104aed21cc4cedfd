from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmhopf import crossed
from cmhopf.crossed import (
    CrossedElement,
    act_delta,
    act_generator,
    act_hopf,
    act_X,
    act_Y,
    check_cocycle,
    check_delta_relation,
    check_gendelta,
    check_leibniz_delta,
    check_leibniz_X,
    check_leibniz_Y,
    gamma_cocycle,
    multiply,
    random_diffeo,
    random_monomial,
)
from cmhopf.geometry import PolyDiffeo
from cmhopf.hopf import D, HopfAlgebra, X, Y
from cmhopf.symb import parse_rational_function
from cmhopf.syntax import format_crossed, parse_crossed

SQUARE = ["x1 + x1^2"]


def rf(text: str, dim: int = 1):
    return parse_rational_function(text, dim)


def psi1():
    return PolyDiffeo.parse(SQUARE, 1)


def elem(text: str, dim: int = 1) -> CrossedElement:
    return parse_crossed(text, dim)


def seeded_monomial(seed: int, dim: int) -> CrossedElement:
    return random_monomial(random.Random(seed), dim)


# -- frozen examples -------------------------------------------------------------------------


def test_product_with_identity_diffeos():
    a = CrossedElement.function(rf("x1"), 1)
    b = CrossedElement.function(rf("y1_1"), 1)
    assert a * b == CrossedElement.function(rf("x1*y1_1"), 1)


def test_product_lifts_the_right_function():
    a = CrossedElement.monomial(rf("1"), psi1())
    b = CrossedElement.function(rf("y1_1"), 1)
    assert multiply(a, b) == CrossedElement.monomial(rf("(1 + 2*x1)*y1_1"), psi1())
    assert format_crossed(multiply(a, b)) == "(2*x1*y1_1 + y1_1) * U[x1^2 + x1]"


def test_diffeo_part_is_contravariant():
    rng = random.Random(3)
    p, q = random_diffeo(rng, 2), random_diffeo(rng, 2)
    prod = CrossedElement.monomial(rf("1", 2), p) * CrossedElement.monomial(rf("1", 2), q)
    ((composite, _),) = prod.sorted_items()
    assert composite == q.compose(p)


def test_vertical_action_examples():
    assert act_Y(1, 1, CrossedElement.function(rf("y1_1"), 1)) == CrossedElement.function(rf("y1_1"), 1)
    assert act_Y(1, 1, CrossedElement.function(rf("5"), 1)).is_zero()


def test_horizontal_action_examples():
    assert act_X(1, CrossedElement.function(rf("x1"), 1)) == CrossedElement.function(rf("y1_1"), 1)
    assert act_X(1, CrossedElement.monomial(rf("1"), psi1())).is_zero()


def test_gamma_examples():
    assert gamma_cocycle(PolyDiffeo.identity(2), 1, 1, 2).is_zero()
    assert gamma_cocycle(psi1(), 1, 1, 1) == rf("2*y1_1/(1 + 2*x1)")
    psi = random_diffeo(random.Random(8), 2)
    for k, j, i in product((1, 2), repeat=3):
        assert gamma_cocycle(psi, k, j, i) == gamma_cocycle(psi, k, i, j)


def test_delta_action_examples():
    for tail in [(), (1,), (1, 2)]:
        assert act_delta(2, 1, 2, tail, CrossedElement.function(rf("x1*y2_1", 2), 2)).is_zero()
    a = CrossedElement.monomial(rf("1"), psi1())
    assert act_delta(1, 1, 1, (), a) == CrossedElement.monomial(rf("2*y1_1/(1 + 2*x1)"), psi1())


def test_leibniz_examples():
    f = CrossedElement.function(rf("x1^2 + y1_1"), 1)
    assert check_leibniz_X(1, f, f) and check_leibniz_Y(1, 1, f, f) and check_leibniz_delta(1, 1, 1, f, f)
    a = CrossedElement.monomial(rf("1"), psi1())
    b = CrossedElement.function(rf("y1_1"), 1)
    assert check_leibniz_X(1, a, b)
    # the correction term of the horizontal rule is genuinely present
    assert not (act_delta(1, 1, 1, (), a) * act_Y(1, 1, b)).is_zero()
    assert act_X(1, a * b) != act_X(1, a) * b + a * act_X(1, b)


def test_gendelta_examples():
    H = HopfAlgebra(1)
    rng = random.Random(1)
    a, b = random_monomial(rng, 1), random_monomial(rng, 1)
    assert check_gendelta(H.gen(Y(1, 1)), a, b, H)
    assert check_gendelta(H.gen(X(1)), a, b, H)
    assert check_gendelta(H.word(X(1), X(1)), a, b, H)


def test_crossed_syntax_round_trip():
    text = "(2*x1*y1_1 + y1_1) * U[x1^2 + x1] + (x1) * U[id]"
    e = elem(text)
    assert elem(format_crossed(e)) == e
    assert elem("(x1) * U[id]") == CrossedElement.function(rf("x1"), 1)


# -- properties --------------------------------------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([1, 2]))
def test_multiplication_is_associative(seed, dim):
    rng = random.Random(seed)
    a, b, c = (random_monomial(rng, dim) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([1, 2]))
def test_leibniz_rules(seed, dim):
    rng = random.Random(seed)
    a, b = random_monomial(rng, dim), random_monomial(rng, dim)
    idx = range(1, dim + 1)
    assert all(check_leibniz_X(i, a, b) for i in idx)
    assert all(check_leibniz_Y(j, k, a, b) for j in idx for k in idx)
    assert all(check_leibniz_delta(*A, a, b) for A in HopfAlgebra(dim).root_labels())


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([1, 2]))
def test_cocycle_identity(seed, dim):
    rng = random.Random(seed)
    assert check_cocycle(random_diffeo(rng, dim), random_diffeo(rng, dim))


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_horizontal_actions_commute(seed):
    a = seeded_monomial(seed, 2)
    assert act_X(1, act_X(2, a)) == act_X(2, act_X(1, a))


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_delta_actions_commute(seed):
    a = seeded_monomial(seed, 2)
    ops = [(1, 1, 2, ()), (2, 2, 2, ()), (1, 1, 1, (2,))]
    for p, q in product(ops, repeat=2):
        assert act_delta(*p[:3], p[3], act_delta(*q[:3], q[3], a)) == act_delta(*q[:3], q[3], act_delta(*p[:3], p[3], a))


@settings(max_examples=5, deadline=None)
@given(seeds)
def test_vertical_delta_commutator_table(seed):
    a = seeded_monomial(seed, 2)
    idx = (1, 2)

    def kron(p, q):
        return 1 if p == q else 0

    for i, j, k, l, m in product(idx, repeat=5):
        lhs = act_Y(i, j, act_delta(k, l, m, (), a)) - act_delta(k, l, m, (), act_Y(i, j, a))
        rhs = (
            act_delta(k, j, m, (), a).scale(kron(i, l))
            + act_delta(k, l, j, (), a).scale(kron(i, m))
            - act_delta(i, l, m, (), a).scale(kron(k, j))
        )
        assert lhs == rhs


@pytest.mark.parametrize("dim", [1, 2])
def test_action_respects_the_bracket(dim):
    """act(g) act(h) - act(h) act(g) equals the action of the algebra bracket [g, h]."""
    H = HopfAlgebra(dim)
    a = seeded_monomial(17, dim)
    gens = crossed.generator_suite(dim, 1)
    for g, h in product(gens, repeat=2):
        lhs = act_generator(g, act_generator(h, a)) - act_generator(h, act_generator(g, a))
        assert lhs == act_hopf(H.gen(g).bracket(H.gen(h)), a), (g, h)


@pytest.mark.parametrize("dim", [1, 2])
def test_gendelta_on_generator_suite(dim):
    H = HopfAlgebra(dim)
    pairs = crossed.random_pairs(5, dim, 2)
    for g in crossed.generator_suite(dim, 1):
        assert all(check_gendelta(H.gen(g), a, b, H) for a, b in pairs), g


def test_quadratic_delta_relation_holds_on_crossed_product():
    a = seeded_monomial(23, 2)
    for c, b, l, m in product((1, 2), repeat=4):
        assert check_delta_relation(c, b, l, m, a)


@pytest.mark.parametrize("dim", [1, 2])
def test_tail_order_is_irrelevant(dim):
    a = seeded_monomial(31, dim)
    for tail in product(range(1, dim + 1), repeat=2):
        assert crossed.tail_permutation_agrees(1, 1, dim, tail, a)
    if dim == 2:
        assert crossed.tail_permutation_agrees(2, 1, 2, (1, 2, 2), a)


def test_non_reduced_delta_acts_like_its_reduction():
    H = HopfAlgebra(2)
    a = seeded_monomial(41, 2)
    g = D(1, 2, 2, (1,))
    assert not g.is_reduced
    assert act_generator(g, a) == act_hopf(H.gen(g), a)
