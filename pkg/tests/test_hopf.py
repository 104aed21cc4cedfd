from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmhopf.hopf import (
    D,
    Gen,
    GradingViolation,
    HopfAlgebra,
    HopfPoly,
    IndexOutOfRange,
    Tensor,
    X,
    Y,
    commutator,
    commutator_table,
    in_graded_ideal,
    is_pbw,
    normal_form,
    reduce_delta,
)
from cmhopf.syntax import parse_poly, parse_tensor
from cmhopf.verify import random_pbw_monomials

H1 = HopfAlgebra(1)
H2 = HopfAlgebra(2)


def kron(a: int, b: int) -> int:
    return 1 if a == b else 0


def p2(text: str) -> HopfPoly:
    return parse_poly(text, 2)


# -- generators and the commutator table -----------------------------------------------------


def test_generator_printing_and_canonical_order():
    assert str(X(1)) == "X(1)"
    assert str(Y(1, 2)) == "Y(1,2)"
    assert D(1, 2, 1) == D(1, 1, 2)
    assert str(D(1, 2, 1, (2, 1))) == "d(1;1,2;1 2)"
    assert X(2) < Y(1, 1) < D(1, 1, 1)
    assert is_pbw((X(1), X(2), Y(1, 1), D(1, 1, 2)))
    assert not is_pbw((Y(1, 1), X(1)))


def test_reduced_deltas():
    assert D(1, 1, 2, (2,)).is_reduced
    assert not D(1, 2, 2, (1,)).is_reduced
    assert len(H2.root_labels()) == 6
    assert len(H2.delta_generators(1)) == 18


@pytest.mark.parametrize("dim", [2])
def test_vertical_commutators(dim):
    for i, j, k, l in product(range(1, dim + 1), repeat=4):
        expected = HopfPoly.zero(dim)
        expected = expected + HopfPoly.gen(dim, Y(k, j), kron(i, l)) - HopfPoly.gen(dim, Y(i, l), kron(k, j))
        assert commutator_table(Y(i, j), Y(k, l), dim) == expected


def test_vertical_delta_commutator():
    dim = 2
    for i, j, k, l, m in product((1, 2), repeat=5):
        expected = (
            HopfPoly.gen(dim, D(k, j, m), kron(i, l))
            + HopfPoly.gen(dim, D(k, l, j), kron(i, m))
            - HopfPoly.gen(dim, D(i, l, m), kron(k, j))
        )
        assert commutator_table(Y(i, j), D(k, l, m), dim) == expected


def test_basic_commutators():
    assert commutator(X(1), X(1)) == ()
    assert commutator_table(X(1), D(1, 1, 2), 2) == HopfPoly.gen(2, D(1, 1, 2, (1,)))
    assert commutator_table(Y(1, 2), X(1), 2) == HopfPoly.gen(2, X(2))
    assert commutator_table(D(1, 1, 1), D(2, 1, 2, (1,)), 2).is_zero()


def test_normal_form_examples():
    assert normal_form([X(1)], 1) == HopfPoly.gen(1, X(1))
    assert str(normal_form([Y(1, 1), X(1)], 1)) == "X(1) Y(1,1) + X(1)"
    assert str(normal_form([D(1, 1, 1), X(1)], 1)) == "X(1) d(1;1,1) - d(1;1,1;1)"


def test_non_reduced_delta_is_rewritten():
    """d^c_{bl,m} - d^c_{bm,l} equals a quadratic expression in first-order deltas."""
    dim = 2
    for c, b in product((1, 2), repeat=2):
        lhs = HopfPoly.gen(dim, D(c, b, 2, (1,))) - HopfPoly.gen(dim, D(c, b, 1, (2,)))
        rhs = HopfPoly.zero(dim)
        for a in (1, 2):
            rhs = rhs + H2.word(D(c, a, 2), D(a, b, 1)) - H2.word(D(a, b, 2), D(c, a, 1))
        assert lhs == rhs
    # the reduced form is stable
    g = D(1, 1, 2, (2,))
    assert reduce_delta(g, 2) == (((g,), 1),)
    assert all(h.is_reduced for m, _ in reduce_delta(D(1, 2, 2, (1,)), 2) for h in m)


def test_index_checks():
    with pytest.raises(IndexOutOfRange):
        H2.gen(X(3))
    with pytest.raises(IndexOutOfRange):
        H2.gen(D(1, 1, 1, (3,)))
    with pytest.raises(ValueError):
        HopfAlgebra(0)


# -- coproduct, counit, antipode ---------------------------------------------------------------


def test_coproduct_of_one():
    assert H1.coproduct(H1.one()) == Tensor.pure(1, 1, 1)
    assert str(H1.coproduct(1)) == "1 (x) 1"


def test_coproduct_of_horizontal_generator():
    expected = parse_tensor(
        "X(1) (x) 1 + 1 (x) X(1) + d(1;1,1) (x) Y(1,1) + d(2;1,1) (x) Y(1,2)"
        " + d(1;1,2) (x) Y(2,1) + d(2;1,2) (x) Y(2,2)",
        2,
    )
    assert H2.coproduct(H2.gen(X(1))) == expected


def test_dim1_frozen_values():
    d1, d2, d3 = D(1, 1, 1), D(1, 1, 1, (1,)), D(1, 1, 1, (1, 1))
    assert str(H1.coproduct(H1.gen(d2))) == "d(1;1,1) (x) d(1;1,1) + d(1;1,1;1) (x) 1 + 1 (x) d(1;1,1;1)"
    # [DERIVED] recursion result, cross-checked by the tree cuts
    assert H1.coproduct(H1.gen(d3)) == parse_tensor(
        "d(1;1,1;1 1) (x) 1 + 1 (x) d(1;1,1;1 1) + 3 d(1;1,1) (x) d(1;1,1;1)"
        " + d(1;1,1;1) (x) d(1;1,1) + d(1;1,1)^2 (x) d(1;1,1)",
        1,
    )
    assert H1.antipode(H1.gen(d2)) == parse_poly("-d(1;1,1;1) + d(1;1,1)^2", 1)


def test_counit_examples():
    assert H1.counit(H1.one()) == 1
    assert H1.counit(H1.gen(X(1))) == 0
    assert H1.counit(parse_poly("3 + 2 X(1) Y(1,1)", 1)) == 3


def test_antipode_on_generators():
    assert H2.antipode(H2.one()) == H2.one()
    assert H2.antipode(H2.gen(Y(1, 2))) == -H2.gen(Y(1, 2))
    assert H2.antipode(H2.gen(D(2, 1, 2))) == -H2.gen(D(2, 1, 2))
    expected = -H2.gen(X(2))
    for j, k in product((1, 2), repeat=2):
        expected = expected + H2.word(D(k, j, 2), Y(j, k))
    assert H2.antipode(H2.gen(X(2))) == expected


def test_antipode_of_square():
    x = H1.gen(X(1))
    assert H1.antipode(x * x) == H1.antipode(x) * H1.antipode(x)
    assert H1.s_tensor_id(H1.coproduct(x * x)).is_zero()


def test_axioms_on_named_elements():
    for p in [H2.gen(X(1)), H2.gen(D(1, 1, 2, (1, 2))), H2.word(X(1), Y(2, 1), D(1, 1, 1))]:
        assert H2.check_coassoc(p) and H2.check_counit(p) and H2.check_antipode(p)


def test_r_term():
    assert H2.r_term((1, 1, 2), ()).is_zero()
    r = H2.r_term((1, 1, 2), (2,))
    expected = Tensor(2, 2)
    for j, k in product((1, 2), repeat=2):
        expected = expected + H2.tensor(H2.gen(D(k, j, 2)), commutator_table(Y(j, k), D(1, 1, 2), 2))
    assert r == expected
    d1 = H1.gen(D(1, 1, 1))
    assert H1.r_term((1, 1, 1), (1,)) == H1.tensor(d1, d1)


def test_graded_ideal_membership():
    assert in_graded_ideal(p2("d(1;1,1) d(1;1,2;1)"), 1)
    assert not in_graded_ideal(p2("d(1;1,2;1 2)"), 1)
    assert not in_graded_ideal(p2("X(1)"), 3)
    assert not in_graded_ideal(H2.one(), 0)


def test_grading_violation_is_an_assertion():
    assert issubclass(GradingViolation, AssertionError)


def test_horizontal_coproducts_commute():
    assert H2.coproduct_gen(X(1)).bracket(H2.coproduct_gen(X(2))).is_zero()


# -- properties --------------------------------------------------------------------------------

GENS2 = H2.generators(1)
reduced = [g for g in GENS2 if g.kind != 2 or g.is_reduced]
words = st.lists(st.sampled_from(reduced), min_size=0, max_size=4)
short_words = st.lists(st.sampled_from(reduced), min_size=0, max_size=2)


@settings(max_examples=40, deadline=None)
@given(words, st.randoms(use_true_random=False))
def test_normal_form_is_confluent(word, rng):
    """Any re-bracketing of a word multiplies out to the same normal form."""
    direct = normal_form(word, 2)
    acc = [HopfPoly.gen(2, g) for g in word]
    while len(acc) > 1:
        n = rng.randrange(len(acc) - 1)
        acc[n : n + 2] = [acc[n] * acc[n + 1]]
    assert (acc[0] if acc else HopfPoly.one(2)) == direct
    assert all(is_pbw(m) for m in direct.terms)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GENS2), st.sampled_from(GENS2))
def test_commutator_table_is_antisymmetric(g, h):
    assert commutator_table(g, h, 2) == -commutator_table(h, g, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GENS2), st.sampled_from(GENS2), st.sampled_from(GENS2))
def test_jacobi_identity(a, b, c):
    A, B, C = (HopfPoly.gen(2, g) for g in (a, b, c))
    assert (A.bracket(B.bracket(C)) + B.bracket(C.bracket(A)) + C.bracket(A.bracket(B))).is_zero()


@settings(max_examples=25, deadline=None)
@given(short_words, short_words)
def test_coproduct_is_multiplicative(w1, w2):
    p, q = normal_form(w1, 2), normal_form(w2, 2)
    assert H2.coproduct(p * q) == H2.coproduct(p) * H2.coproduct(q)


@settings(max_examples=25, deadline=None)
@given(short_words, short_words)
def test_antipode_is_an_antihomomorphism(w1, w2):
    p, q = normal_form(w1, 2), normal_form(w2, 2)
    assert H2.antipode(p * q) == H2.antipode(q) * H2.antipode(p)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_axioms_on_random_monomials(seed):
    for p in random_pbw_monomials(H2, random.Random(seed), 3, 3, 1):
        assert H2.check_coassoc(p)
        assert H2.check_counit(p)
        assert H2.check_antipode(p)


@pytest.mark.parametrize("dim", [1, 2])
def test_axioms_on_all_generators(dim):
    H = HopfAlgebra(dim)
    for g in H.generators(3):
        p = H.gen(g)
        assert H.check_coassoc(p) and H.check_counit(p) and H.check_antipode(p), g


def test_instances_do_not_share_caches():
    a, b = HopfAlgebra(2), HopfAlgebra(2)
    a.coproduct(a.gen(X(1)))
    assert b._cop_gen == {}
    assert isinstance(Gen(0, (1,), ()), tuple)
