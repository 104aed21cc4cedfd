"""The crossed product of frame-bundle functions by polynomial diffeomorphisms.

Elements are finite sums of monomials ``f * U[psi]`` with the contravariant
product ``(f1 U[psi1]) (f2 U[psi2]) = f1 (f2 o lift(psi1)) U[psi2 o psi1]``.
The horizontal, vertical and delta operators act on these sums, which gives
an independent oracle for the Hopf algebra in :mod:`cmhopf.hopf`.  The base
connection is flat throughout.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .geometry import PolyDiffeo, vertical_fields
from .hopf import XK, YK, D, Gen, HopfAlgebra, HopfPoly
from .symb import (
    Polynomial,
    RationalFunction,
    coordinates,
    frame_inverse,
    frame_matrix,
    rf_sum,
    xc,
)


def _rf(f, dim: int) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Polynomial):
        return RationalFunction(f)
    return RationalFunction.constant(dim, f)


class CrossedElement:
    """Finite sum of ``f U[psi]`` with at most one term per diffeomorphism."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms: dict[PolyDiffeo, RationalFunction] = {}
        for psi, f in (terms or {}).items():
            self._accumulate(psi, _rf(f, dim))

    def _accumulate(self, psi: PolyDiffeo, f: RationalFunction) -> None:
        if psi.dim != self.dim or f.dim != self.dim:
            raise ValueError("dimension mismatch")
        if psi in self.terms:
            f = self.terms[psi] + f
        if f.is_zero():
            self.terms.pop(psi, None)
        else:
            self.terms[psi] = f

    @classmethod
    def zero(cls, dim: int) -> CrossedElement:
        return cls(dim)

    @classmethod
    def monomial(cls, f, psi: PolyDiffeo) -> CrossedElement:
        return cls(psi.dim, {psi: f})

    @classmethod
    def function(cls, f, dim: int) -> CrossedElement:
        """``f U[id]``."""
        return cls(dim, {PolyDiffeo.identity(dim): f})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_items(self) -> list[tuple[PolyDiffeo, RationalFunction]]:
        return sorted(self.terms.items(), key=lambda kv: (not kv[0].is_identity(), str(kv[0])))

    def map_functions(self, fn: Callable[[RationalFunction, PolyDiffeo], RationalFunction]) -> CrossedElement:
        out = CrossedElement(self.dim)
        for psi, f in self.terms.items():
            out._accumulate(psi, fn(f, psi))
        return out

    def __add__(self, other: CrossedElement) -> CrossedElement:
        out = CrossedElement(self.dim, self.terms)
        for psi, f in other.terms.items():
            out._accumulate(psi, f)
        return out

    def __neg__(self) -> CrossedElement:
        return self.map_functions(lambda f, _psi: -f)

    def __sub__(self, other: CrossedElement) -> CrossedElement:
        return self + (-other)

    def scale(self, c) -> CrossedElement:
        c = _rf(c, self.dim)
        return self.map_functions(lambda f, _psi: f * c)

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        from .syntax import format_crossed

        return format_crossed(self)

    def __repr__(self) -> str:
        return f"CrossedElement({self})"


def multiply(a: CrossedElement, b: CrossedElement) -> CrossedElement:
    """Bilinear extension of ``(f1 U[psi1]) (f2 U[psi2]) = f1 (f2 o lift psi1) U[psi2 o psi1]``."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out = CrossedElement(a.dim)
    for psi1, f1 in a.terms.items():
        for psi2, f2 in b.terms.items():
            out._accumulate(psi2.compose(psi1), f1 * psi1.pull(f2))
    return out


# -- the actions -------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _vertical(dim: int):
    return vertical_fields(dim)


def _x_derivative(f: RationalFunction, i: int) -> RationalFunction:
    """Flat horizontal field ``X_i = y^mu_i d/dx^mu`` applied to ``f``."""
    d = f.dim
    y = frame_matrix(d)
    return rf_sum([f.diff(xc(mu + 1)) * y[mu][i - 1] for mu in range(d)], d)


def act_Y(j: int, k: int, a: CrossedElement) -> CrossedElement:
    """``Y^j_k (f U[psi]) = (Y^j_k f) U[psi]`` with ``Y^j_k = y^mu_k d/dy^mu_j``."""
    field = _vertical(a.dim)[(j, k)]
    return a.map_functions(lambda f, _psi: field(f))


def act_X(i: int, a: CrossedElement) -> CrossedElement:
    """``X_i (f U[psi]) = (y^mu_i d_mu f) U[psi]``."""
    return a.map_functions(lambda f, _psi: _x_derivative(f, i))


@lru_cache(maxsize=None)
def gamma_cocycle(psi: PolyDiffeo, k: int, j: int, i: int) -> RationalFunction:
    """``((d psi)^-1)^nu_beta d_mu d_alpha psi^beta y^mu_j y^alpha_i (y^-1)^k_nu``."""
    d = psi.dim
    y = frame_matrix(d)
    yinv = frame_inverse(d)
    inv = psi.inverse_jacobian
    hess = psi.hessian
    terms = []
    for nu in range(d):
        for beta in range(d):
            if inv[nu][beta].is_zero():
                continue
            for mu in range(d):
                for al in range(d):
                    h = hess[beta][mu][al]
                    if h.is_zero():
                        continue
                    terms.append(inv[nu][beta] * yinv[k - 1][nu] * (h * y[mu][j - 1] * y[al][i - 1]))
    return rf_sum(terms, d)


def act_delta(k: int, j: int, i: int, tail: Sequence[int], a: CrossedElement) -> CrossedElement:
    """delta^k_{ji, tail} on ``a``; tails act as iterated commutators with X, first index innermost."""
    tail = tuple(tail)
    if not tail:
        return a.map_functions(lambda f, psi: f * gamma_cocycle(psi, k, j, i))
    inner = tail[:-1]
    last = tail[-1]
    return act_X(last, act_delta(k, j, i, inner, a)) - act_delta(k, j, i, inner, act_X(last, a))


def act_generator(g: Gen, a: CrossedElement) -> CrossedElement:
    if g.kind == XK:
        return act_X(g.idx[0], a)
    if g.kind == YK:
        return act_Y(g.idx[0], g.idx[1], a)
    k, j, i = g.idx
    return act_delta(k, j, i, g.tail, a)


def act_monomial(m: Sequence[Gen], a: CrossedElement) -> CrossedElement:
    """A product of generators acts as the composition, rightmost factor first."""
    for g in reversed(m):
        a = act_generator(g, a)
    return a


def act_hopf(h: HopfPoly, a: CrossedElement) -> CrossedElement:
    out = CrossedElement(a.dim)
    for m, c in h.terms.items():
        out = out + act_monomial(m, a).scale(c)
    return out


# -- identity checks ---------------------------------------------------------------------


def check_leibniz_X(i: int, a: CrossedElement, b: CrossedElement) -> bool:
    """``X_i(ab) = X_i(a) b + a X_i(b) + sum_{j,k} delta^k_{ji}(a) Y^j_k(b)``."""
    lhs = act_X(i, a * b)
    rhs = act_X(i, a) * b + a * act_X(i, b)
    for j in range(1, a.dim + 1):
        for k in range(1, a.dim + 1):
            rhs = rhs + act_delta(k, j, i, (), a) * act_Y(j, k, b)
    return lhs == rhs


def check_leibniz_Y(j: int, k: int, a: CrossedElement, b: CrossedElement) -> bool:
    return act_Y(j, k, a * b) == act_Y(j, k, a) * b + a * act_Y(j, k, b)


def check_leibniz_delta(
    k: int, j: int, i: int, a: CrossedElement, b: CrossedElement, tail: Sequence[int] = ()
) -> bool:
    if tail:
        return check_gendelta(HopfPoly.gen(a.dim, D(k, j, i, tail)), a, b)
    return act_delta(k, j, i, (), a * b) == act_delta(k, j, i, (), a) * b + a * act_delta(k, j, i, (), b)


def check_gendelta(h: HopfPoly, a: CrossedElement, b: CrossedElement, algebra: HopfAlgebra | None = None) -> bool:
    """``h(ab) = sum h_(1)(a) h_(2)(b)`` with the coproduct from :mod:`cmhopf.hopf`."""
    H = algebra or HopfAlgebra(h.dim)
    lhs = act_hopf(h, a * b)
    rhs = CrossedElement(a.dim)
    for (left, right), c in H.coproduct(h).terms.items():
        rhs = rhs + (act_monomial(left, a) * act_monomial(right, b)).scale(c)
    return lhs == rhs


def check_cocycle(psi1: PolyDiffeo, psi2: PolyDiffeo) -> bool:
    """``gamma(psi2 o psi1) = gamma(psi1) + gamma(psi2) o lift(psi1)`` for every index triple."""
    d = psi1.dim
    comp = psi2.compose(psi1)
    for k in range(1, d + 1):
        for j in range(1, d + 1):
            for i in range(1, d + 1):
                lhs = gamma_cocycle(comp, k, j, i)
                rhs = gamma_cocycle(psi1, k, j, i) + psi1.pull(gamma_cocycle(psi2, k, j, i))
                if lhs != rhs:
                    return False
    return True


def check_delta_relation(c: int, b: int, l: int, m: int, a: CrossedElement) -> bool:
    """The flat-case quadratic relation among deltas, evaluated on ``a``.

    ``delta^c_{bl,m} - delta^c_{bm,l} = sum_s (delta^c_{sl} delta^s_{bm} - delta^s_{bl} delta^c_{sm})``.
    """
    lhs = act_delta(c, b, l, (m,), a) - act_delta(c, b, m, (l,), a)
    rhs = CrossedElement(a.dim)
    for s in range(1, a.dim + 1):
        rhs = rhs + act_delta(c, s, l, (), act_delta(s, b, m, (), a))
        rhs = rhs - act_delta(s, b, l, (), act_delta(c, s, m, (), a))
    return lhs == rhs


# -- seeded random inputs ---------------------------------------------------------------------


def random_diffeo(rng: random.Random, dim: int) -> PolyDiffeo:
    """A polynomial diffeomorphism of degree <= 2.

    For dim >= 2 the Jacobian is unipotent triangular.  In dim 1 a unipotent
    Jacobian forces a translation, whose cocycle vanishes, so the quadratic
    coefficient is kept and the Jacobian is ``1 + 2 c x``.
    """
    xs = [Polynomial.var(dim, xc(mu)) for mu in range(1, dim + 1)]
    if dim == 1:
        c = rng.choice([-2, -1, 1, 2, 3])
        a = rng.randint(-2, 2)
        return PolyDiffeo([xs[0] + xs[0] ** 2 * c + a])
    comps = list(xs)
    upper = rng.random() < 0.5
    for mu in range(dim):
        later = range(mu + 1, dim) if upper else range(mu)
        extra = Polynomial.constant(dim, rng.randint(-1, 1))
        for nu in later:
            extra = extra + xs[nu] * rng.randint(-1, 1) + xs[nu] ** 2 * rng.randint(-2, 2)
        for nu in later:
            for rho in later:
                if nu < rho:
                    extra = extra + xs[nu] * xs[rho] * rng.randint(-1, 1)
        comps[mu] = comps[mu] + extra
    psi = PolyDiffeo(comps)
    if psi.is_identity():
        return random_diffeo(rng, dim)
    return psi


def random_function(rng: random.Random, dim: int, max_terms: int = 3) -> RationalFunction:
    """``p / q`` with ``p`` of degree <= 2 and ``q`` affine with nonzero constant term."""
    coords = coordinates(dim)
    num = Polynomial.constant(dim, rng.randint(-2, 2))
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(1, 2)
        mono = Polynomial.constant(dim, rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(deg):
            mono = mono * Polynomial.var(dim, rng.choice(coords))
        num = num + mono
    if num.is_zero():
        num = Polynomial.constant(dim, 1)
    den = Polynomial.constant(dim, rng.choice([1, 2, 3]))
    if rng.random() < 0.5:
        den = den + Polynomial.var(dim, rng.choice(coords)) * rng.choice([-1, 1, 2])
    return RationalFunction(num, den)


def random_monomial(rng: random.Random, dim: int, identity_chance: float = 0.25) -> CrossedElement:
    psi = PolyDiffeo.identity(dim) if rng.random() < identity_chance else random_diffeo(rng, dim)
    return CrossedElement.monomial(random_function(rng, dim), psi)


def random_pairs(seed: int, dim: int, count: int) -> list[tuple[CrossedElement, CrossedElement]]:
    rng = random.Random(seed)
    return [(random_monomial(rng, dim), random_monomial(rng, dim)) for _ in range(count)]


def generator_suite(dim: int, max_tail: int = 1) -> list[Gen]:
    """Generators exercised by the oracle: all X, all Y and reduced deltas up to ``max_tail``."""
    H = HopfAlgebra(dim)
    return H.x_generators() + H.y_generators() + [g for g in H.delta_generators(max_tail) if g.is_reduced]


def tail_permutation_agrees(k: int, j: int, i: int, tail: Iterable[int], a: CrossedElement) -> bool:
    """Acting with delta^k_{ji,lm...} does not depend on the order of the tail."""
    tail = tuple(tail)
    ref = act_delta(k, j, i, tail, a)
    return all(act_delta(k, j, i, p, a) == ref for p in set(permutations(tail)))

