"""The enveloping Hopf algebra generated by X_i, Y^j_k and the delta operators.

Generators carry concrete indices in ``1..dim``:

* ``X(i)``                      the horizontal field X_i,
* ``Y(j, k)``                   the vertical field Y^j_k,
* ``D(k, j, i, tail)``          delta^k_{ji, tail}; the lower pair and the tail
  are stored sorted, so ``D(k, j, i) == D(k, i, j)`` and tails are multisets.

Elements are kept in the PBW basis (all X, then all Y, then all delta, each
block sorted).  Products are straightened with the commutator table; the
coproduct is multiplicative and the antipode is an antihomomorphism.

The delta generators are not algebraically free.  Because the horizontal
fields commute in the flat realization, the quadratic relation

    delta^c_{bl,m} - delta^c_{bm,l} = sum_a (delta^c_{al} delta^a_{bm} - delta^a_{bl} delta^c_{am})

and all its X-derivatives hold on the crossed product.  Without it
``[Delta(X_l), Delta(X_m)]`` is nonzero and the coproduct is not well defined
on tail-symmetric generators.  Normal forms therefore also rewrite every delta
so that its lower pair holds the two smallest lower indices ("reduced" deltas).
The relation sums over ``1..dim``, so every element carries its dimension.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, NamedTuple, Sequence

XK, YK, DK = 0, 1, 2


class Gen(NamedTuple):
    kind: int
    idx: tuple[int, ...]
    tail: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == XK:
            return f"X({self.idx[0]})"
        if self.kind == YK:
            return f"Y({self.idx[0]},{self.idx[1]})"
        k, j, i = self.idx
        if self.tail:
            return f"d({k};{j},{i};{' '.join(map(str, self.tail))})"
        return f"d({k};{j},{i})"

    def indices(self) -> tuple[int, ...]:
        return self.idx + self.tail

    @property
    def is_reduced(self) -> bool:
        """A delta is reduced when no tail index is smaller than its lower pair."""
        return self.kind != DK or not self.tail or self.idx[2] <= self.tail[0]


def X(i: int) -> Gen:
    return Gen(XK, (i,))


def Y(j: int, k: int) -> Gen:
    """Y^j_k."""
    return Gen(YK, (j, k))


def D(k: int, j: int, i: int, tail: Iterable[int] = ()) -> Gen:
    """delta^k_{ji, tail} with sorted lower pair and sorted tail."""
    lo, hi = (j, i) if j <= i else (i, j)
    return Gen(DK, (k, lo, hi), tuple(sorted(tail)))


def with_tail(g: Gen, extra: int) -> Gen:
    return Gen(DK, g.idx, tuple(sorted(g.tail + (extra,))))


class IndexOutOfRange(ValueError):
    pass


class GradingViolation(AssertionError):
    pass


Monomial = tuple  # tuple[Gen, ...] in PBW order


def is_pbw(m: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, m[1:]))


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# -- commutator table (free Lie algebra level) --------------------------------------------


@lru_cache(maxsize=None)
def _y_delta(y: Gen, d: Gen) -> tuple[tuple[Gen, int], ...]:
    """[Y^b_c, delta^k_{ji,a}] as a combination of delta generators."""
    b, c = y.idx
    acc: dict = {}
    if not d.tail:
        k, l, m = d.idx
        if b == l:
            _add(acc, D(k, c, m), 1)
        if b == m:
            _add(acc, D(k, l, c), 1)
        if k == c:
            _add(acc, D(b, l, m), -1)
        return tuple(acc.items())
    last = d.tail[-1]
    shorter = Gen(DK, d.idx, d.tail[:-1])
    # [[Y, X_last], delta_a] + [X_last, [Y, delta_a]]
    if b == last:
        _add(acc, with_tail(shorter, c), 1)
    for g, coeff in _y_delta(y, shorter):
        _add(acc, with_tail(g, last), coeff)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def commutator(g: Gen, h: Gen) -> tuple[tuple[Gen, int], ...]:
    """[g, h] as a linear combination of single generators (before reduction)."""
    if g == h:
        return ()
    kg, kh = g.kind, h.kind
    if kg == kh and kg in (XK, DK):
        return ()
    if kg == XK and kh == DK:
        return ((with_tail(h, g.idx[0]), 1),)
    if kg == DK and kh == XK:
        return ((with_tail(g, h.idx[0]), -1),)
    if kg == YK and kh == YK:
        i, j = g.idx
        k, l = h.idx
        acc: dict = {}
        if i == l:
            _add(acc, Y(k, j), 1)
        if k == j:
            _add(acc, Y(i, l), -1)
        return tuple(acc.items())
    if kg == YK and kh == XK:
        k, j = g.idx
        return ((X(j), 1),) if k == h.idx[0] else ()
    if kg == XK and kh == YK:
        return tuple((t, -c) for t, c in commutator(h, g))
    if kg == YK and kh == DK:
        return _y_delta(g, h)
    if kg == DK and kh == YK:
        return tuple((t, -c) for t, c in _y_delta(h, g))
    raise AssertionError((g, h))


# -- reduction of delta generators -----------------------------------------------------------


def _delta_product(factors: Sequence[tuple[tuple[Monomial, int], ...]]) -> dict:
    """Multiply commuting delta polynomials given as (monomial, coeff) item lists."""
    acc: dict = {(): 1}
    for items in factors:
        nxt: dict = {}
        for m1, c1 in acc.items():
            for m2, c2 in items:
                _add(nxt, tuple(sorted(m1 + m2)), c1 * c2)
        acc = nxt
    return acc


def _reduce_monomial(m: Monomial, dim: int) -> dict:
    return _delta_product([reduce_delta(g, dim) for g in m])


def _derive(poly: dict, idx: int, dim: int) -> dict:
    """Apply the derivation [X_idx, .] to a delta polynomial and reduce."""
    out: dict = {}
    for m, c in poly.items():
        for p in range(len(m)):
            bumped = m[:p] + (with_tail(m[p], idx),) + m[p + 1:]
            for m2, c2 in _reduce_monomial(bumped, dim).items():
                _add(out, m2, c * c2)
    return out


@lru_cache(maxsize=None)
def reduce_delta(g: Gen, dim: int) -> tuple[tuple[Monomial, int], ...]:
    """Express a delta generator through reduced deltas.

    Uses delta^c_{bl,m r} = delta^c_{bm,l r} + [X_r, Q] with
    Q = sum_a (delta^c_{al} delta^a_{bm} - delta^a_{bl} delta^c_{am}).
    The quadratic part has strictly shorter tails, so the recursion ends.
    """
    if g.is_reduced:
        return (((g,), 1),)
    c, b, l = g.idx
    m, rest = g.tail[0], g.tail[1:]
    acc = dict(reduce_delta(D(c, b, m, (l,) + rest), dim))
    quad: dict = {}
    for a in range(1, dim + 1):
        _add(quad, tuple(sorted((D(c, a, l), D(a, b, m)))), 1)
        _add(quad, tuple(sorted((D(a, b, l), D(c, a, m)))), -1)
    for r in rest:
        quad = _derive(quad, r, dim)
    for mono, v in quad.items():
        _add(acc, mono, v)
    return tuple(acc.items())


# -- straightening ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _append(m: Monomial, g: Gen, dim: int) -> tuple[tuple[Monomial, int], ...]:
    """Normal form of the word ``m * g`` for a PBW monomial ``m``."""
    if not g.is_reduced:
        acc: dict = {}
        for dm, c in reduce_delta(g, dim):
            for mono, c2 in _append_word(m, dm, dim).items():
                _add(acc, mono, c * c2)
        return tuple(acc.items())
    if not m or m[-1] <= g:
        return ((m + (g,), 1),)
    h = m[-1]
    rest = m[:-1]
    acc = {}
    # rest h g = rest g h + rest [h, g]
    for mono, c in _append(rest, g, dim):
        for mono2, c2 in _append(mono, h, dim):
            _add(acc, mono2, c * c2)
    for t, c in commutator(h, g):
        # progress: each commutator term is a single letter, shorter than "h g"
        assert isinstance(t, Gen)
        for mono2, c2 in _append(rest, t, dim):
            _add(acc, mono2, c * c2)
    return tuple(acc.items())


def _append_word(m: Monomial, word: Sequence[Gen], dim: int) -> dict:
    acc: dict = {m: 1}
    for g in word:
        nxt: dict = {}
        for mono, c in acc.items():
            for mono2, c2 in _append(mono, g, dim):
                _add(nxt, mono2, c * c2)
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def mul_monomials(m1: Monomial, m2: Monomial, dim: int) -> tuple[tuple[Monomial, int], ...]:
    return tuple(_append_word(m1, m2, dim).items())


class HopfPoly:
    """Exact linear combination of PBW monomials in dimension ``dim``."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if not is_pbw(m) or not all(g.is_reduced for g in m):
                for m2, c2 in _append_word((), m, dim).items():
                    _add(self.terms, m2, c * c2)
            else:
                _add(self.terms, m, c)

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> HopfPoly:
        p = object.__new__(cls)
        p.dim = dim
        p.terms = terms
        return p

    @classmethod
    def one(cls, dim: int, c=1) -> HopfPoly:
        return cls(dim, {(): c})

    @classmethod
    def zero(cls, dim: int) -> HopfPoly:
        return cls._raw(dim, {})

    @classmethod
    def gen(cls, dim: int, g: Gen, c=1) -> HopfPoly:
        return cls(dim, {(g,): c})

    @classmethod
    def monomial(cls, dim: int, m: Monomial, c=1) -> HopfPoly:
        return cls(dim, {m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def _coerce(self, other) -> HopfPoly:
        if isinstance(other, HopfPoly):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, Gen):
            return HopfPoly.gen(self.dim, other)
        return HopfPoly.one(self.dim, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add(out, m, c)
        return HopfPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return HopfPoly._raw(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (HopfPoly, Gen)):
            c = Fraction(other)
            return HopfPoly._raw(self.dim, {m: v * c for m, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in mul_monomials(m1, m2, self.dim):
                    _add(out, m, c1 * c2 * c)
        return HopfPoly._raw(self.dim, out)

    def __rmul__(self, other):
        if isinstance(other, Gen):
            return self._coerce(other) * self
        return self * other

    def __pow__(self, n: int):
        out = HopfPoly.one(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def bracket(self, other) -> HopfPoly:
        other = self._coerce(other)
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HopfPoly.one(self.dim, other)
        if not isinstance(other, HopfPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def generators(self) -> set[Gen]:
        return {g for m in self.terms for g in m}

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def __str__(self) -> str:
        from .syntax import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"HopfPoly({self})"


def normal_form(word: Sequence[Gen], dim: int, coeff=1) -> HopfPoly:
    """Straighten an arbitrary word of generators into the PBW basis."""
    acc = _append_word((), tuple(word), dim)
    c = Fraction(coeff)
    return HopfPoly._raw(dim, {m: v * c for m, v in acc.items()} if c else {})


def commutator_table(g: Gen, h: Gen, dim: int) -> HopfPoly:
    """[g, h] in normal form."""
    out = HopfPoly.zero(dim)
    for t, c in commutator(g, h):
        out = out + HopfPoly.gen(dim, t, c)
    return out


# -- tensors ---------------------------------------------------------------------------


class Tensor:
    """Linear combination of k-fold tensor products of PBW monomials (k = 2 or 3)."""

    __slots__ = ("dim", "arity", "terms")

    def __init__(self, dim: int, arity: int, terms: dict | None = None):
        self.dim = dim
        self.arity = arity
        self.terms: dict[tuple[Monomial, ...], Fraction] = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise ValueError("tensor key of wrong arity")
            piece = Tensor.pure(dim, *(HopfPoly.monomial(dim, m) for m in key)) * c
            for k2, c2 in piece.terms.items():
                _add(self.terms, k2, c2)

    @classmethod
    def _raw(cls, dim: int, arity: int, terms: dict) -> Tensor:
        t = object.__new__(cls)
        t.dim = dim
        t.arity = arity
        t.terms = terms
        return t

    @classmethod
    def pure(cls, dim: int, *factors) -> Tensor:
        """Tensor product of HopfPolys, generators or scalars."""
        polys = []
        for f in factors:
            if isinstance(f, HopfPoly):
                polys.append(f)
            elif isinstance(f, Gen):
                polys.append(HopfPoly.gen(dim, f))
            else:
                polys.append(HopfPoly.one(dim, f))
        out: dict = {}
        for combo in product(*(p.terms.items() for p in polys)):
            c = Fraction(1)
            for _, v in combo:
                c *= v
            _add(out, tuple(m for m, _ in combo), c)
        return cls._raw(dim, len(polys), out)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __add__(self, other: Tensor) -> Tensor:
        if other.arity != self.arity or other.dim != self.dim:
            raise ValueError("tensor shape mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return Tensor._raw(self.dim, self.arity, out)

    def __neg__(self) -> Tensor:
        return Tensor._raw(self.dim, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            c = Fraction(other)
            return Tensor._raw(self.dim, self.arity, {k: v * c for k, v in self.terms.items()} if c else {})
        if other.arity != self.arity or other.dim != self.dim:
            raise ValueError("tensor shape mismatch")
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                slots = [mul_monomials(a, b, self.dim) for a, b in zip(k1, k2)]
                for combo in product(*slots):
                    c = c1 * c2
                    for _, v in combo:
                        c *= v
                    _add(out, tuple(m for m, _ in combo), c)
        return Tensor._raw(self.dim, self.arity, out)

    def __rmul__(self, other):
        return self * other

    def bracket(self, other: Tensor) -> Tensor:
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.dim, self.arity, self.terms) == (other.dim, other.arity, other.terms)

    def __hash__(self):
        return hash((self.dim, self.arity, frozenset(self.terms.items())))

    def slot(self, k: int) -> Iterator[Monomial]:
        for key in self.terms:
            yield key[k]

    def __str__(self) -> str:
        from .syntax import format_tensor

        return format_tensor(self)

    def __repr__(self) -> str:
        return f"Tensor({self})"


def multiply(t: Tensor) -> HopfPoly:
    """The multiplication map H (x) H -> H."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for m, v in mul_monomials(a, b, t.dim):
            _add(out, m, c * v)
    return HopfPoly._raw(t.dim, out)


def monomial_in_graded_ideal(mono: Monomial, m: int) -> bool:
    return bool(mono) and all(g.kind == DK and len(g.tail) <= m for g in mono)


def in_graded_ideal(p: HopfPoly, m: int) -> bool:
    """Membership in H^0_m: delta generators only, no constant term, tails of length <= m."""
    return all(monomial_in_graded_ideal(mono, m) for mono in p.terms)


def tensor_in_graded_ideal(t: Tensor, m: int) -> bool:
    return all(monomial_in_graded_ideal(mono, m) for key in t.terms for mono in key)


# -- the Hopf algebra of a fixed dimension -----------------------------------------------


class HopfAlgebra:
    """Coproduct, counit and antipode with every index summation expanded over 1..dim.

    Caches live on the instance, so independent instances never share state.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        self._cop_gen: dict[Gen, Tensor] = {}
        self._cop_mono: dict[Monomial, Tensor] = {}
        self._s_gen: dict[Gen, HopfPoly] = {}
        self._s_mono: dict[Monomial, HopfPoly] = {}

    @property
    def indices(self) -> range:
        return range(1, self.dim + 1)

    # -- element construction --

    def one(self, c=1) -> HopfPoly:
        return HopfPoly.one(self.dim, c)

    def zero(self) -> HopfPoly:
        return HopfPoly.zero(self.dim)

    def gen(self, g: Gen, c=1) -> HopfPoly:
        return HopfPoly.gen(self.dim, self.check_gen(g), c)

    def word(self, *gens: Gen, coeff=1) -> HopfPoly:
        for g in gens:
            self.check_gen(g)
        return normal_form(gens, self.dim, coeff)

    def tensor(self, *factors) -> Tensor:
        return Tensor.pure(self.dim, *factors)

    def poly(self, x) -> HopfPoly:
        if isinstance(x, HopfPoly):
            if x.dim != self.dim:
                raise ValueError("dimension mismatch")
            return x
        if isinstance(x, Gen):
            return self.gen(x)
        return self.one(x)

    def check_gen(self, g: Gen) -> Gen:
        for v in g.indices():
            if not 1 <= v <= self.dim:
                raise IndexOutOfRange(f"index {v} exceeds dim {self.dim}")
        return g

    def check_poly(self, p: HopfPoly) -> HopfPoly:
        for g in p.generators():
            self.check_gen(g)
        return p

    # -- generator sets --

    def x_generators(self) -> list[Gen]:
        return [X(i) for i in self.indices]

    def y_generators(self) -> list[Gen]:
        return [Y(j, k) for j in self.indices for k in self.indices]

    def root_labels(self) -> list[tuple[int, int, int]]:
        """Canonical (k, j, i) with j <= i: the n^2(n+1)/2 labels A."""
        return [(k, j, i) for k in self.indices for j in self.indices for i in self.indices if j <= i]

    def tails(self, length: int) -> list[tuple[int, ...]]:
        return list(combinations_with_replacement(self.indices, length))

    def delta_generators(self, max_tail: int = 0) -> list[Gen]:
        """All tail-sorted deltas with |tail| <= max_tail, reduced or not."""
        return [
            D(k, j, i, tail)
            for n in range(max_tail + 1)
            for tail in self.tails(n)
            for (k, j, i) in self.root_labels()
        ]

    def generators(self, max_tail: int = 0) -> list[Gen]:
        return self.x_generators() + self.y_generators() + self.delta_generators(max_tail)

    # -- coproduct --

    def _free_coproduct_gen(self, g: Gen) -> Tensor:
        one = self.one()
        if g.kind == YK or (g.kind == DK and not g.tail):
            return self.tensor(g, one) + self.tensor(one, g)
        if g.kind == XK:
            i = g.idx[0]
            t = self.tensor(g, one) + self.tensor(one, g)
            for j in self.indices:
                for k in self.indices:
                    t = t + self.tensor(D(k, j, i), Y(j, k))
            return t
        last = g.tail[-1]
        shorter = Gen(DK, g.idx, g.tail[:-1])
        return self.coproduct_gen(X(last)).bracket(self.coproduct_gen(shorter))

    def coproduct_gen(self, g: Gen) -> Tensor:
        hit = self._cop_gen.get(g)
        if hit is not None:
            return hit
        self.check_gen(g)
        if g.is_reduced:
            t = self._free_coproduct_gen(g)
        else:
            t = self.coproduct(self.gen(g))
        self._cop_gen[g] = t
        return t

    def coproduct_monomial(self, m: Monomial) -> Tensor:
        hit = self._cop_mono.get(m)
        if hit is not None:
            return hit
        if not m:
            t = Tensor._raw(self.dim, 2, {((), ()): Fraction(1)})
        elif len(m) == 1:
            t = self.coproduct_gen(m[0])
        else:
            t = self.coproduct_monomial(m[:-1]) * self.coproduct_gen(m[-1])
        self._cop_mono[m] = t
        return t

    def coproduct(self, p) -> Tensor:
        p = self.poly(p)
        out: dict = {}
        for m, c in p.terms.items():
            for key, v in self.coproduct_monomial(m).terms.items():
                _add(out, key, c * v)
        return Tensor._raw(self.dim, 2, out)

    # -- counit --

    def counit(self, p) -> Fraction:
        return self.poly(p).terms.get((), Fraction(0))

    # -- antipode --

    def antipode_gen(self, g: Gen) -> HopfPoly:
        hit = self._s_gen.get(g)
        if hit is not None:
            return hit
        self.check_gen(g)
        if not g.is_reduced:
            s = self.antipode(self.gen(g))
        elif g.kind == YK or (g.kind == DK and not g.tail):
            s = -self.gen(g)
        elif g.kind == XK:
            i = g.idx[0]
            s = -self.gen(g)
            for j in self.indices:
                for k in self.indices:
                    s = s + self.word(D(k, j, i), Y(j, k))
        else:
            last = g.tail[-1]
            shorter = Gen(DK, g.idx, g.tail[:-1])
            s = self.antipode_gen(shorter).bracket(self.antipode_gen(X(last)))
        self._s_gen[g] = s
        return s

    def antipode_monomial(self, m: Monomial) -> HopfPoly:
        hit = self._s_mono.get(m)
        if hit is not None:
            return hit
        if not m:
            s = self.one()
        elif len(m) == 1:
            s = self.antipode_gen(m[0])
        else:
            # S(m' g) = S(g) S(m')
            s = self.antipode_gen(m[-1]) * self.antipode_monomial(m[:-1])
        self._s_mono[m] = s
        return s

    def antipode(self, p) -> HopfPoly:
        p = self.poly(p)
        out = self.zero()
        for m, c in p.terms.items():
            out = out + self.antipode_monomial(m) * c
        return out

    # -- structure maps on tensors --

    def s_tensor_id(self, t: Tensor) -> HopfPoly:
        """m o (S (x) id)."""
        out: dict = {}
        for (a, b), c in t.terms.items():
            for m1, c1 in self.antipode_monomial(a).terms.items():
                for m, v in mul_monomials(m1, b, self.dim):
                    _add(out, m, c * c1 * v)
        return HopfPoly._raw(self.dim, out)

    def id_tensor_s(self, t: Tensor) -> HopfPoly:
        """m o (id (x) S)."""
        out: dict = {}
        for (a, b), c in t.terms.items():
            for m2, c2 in self.antipode_monomial(b).terms.items():
                for m, v in mul_monomials(a, m2, self.dim):
                    _add(out, m, c * c2 * v)
        return HopfPoly._raw(self.dim, out)

    def counit_left(self, t: Tensor) -> HopfPoly:
        """(epsilon (x) id)."""
        out: dict = {}
        for (a, b), c in t.terms.items():
            if not a:
                _add(out, b, c)
        return HopfPoly._raw(self.dim, out)

    def counit_right(self, t: Tensor) -> HopfPoly:
        """(id (x) epsilon)."""
        out: dict = {}
        for (a, b), c in t.terms.items():
            if not b:
                _add(out, a, c)
        return HopfPoly._raw(self.dim, out)

    # -- axiom checks --

    def coassoc_sides(self, p) -> tuple[Tensor, Tensor]:
        cop = self.coproduct(p)
        left: dict = {}
        right: dict = {}
        for (a, b), c in cop.terms.items():
            for (a1, a2), v in self.coproduct_monomial(a).terms.items():
                _add(left, (a1, a2, b), c * v)
            for (b1, b2), v in self.coproduct_monomial(b).terms.items():
                _add(right, (a, b1, b2), c * v)
        return Tensor._raw(self.dim, 3, left), Tensor._raw(self.dim, 3, right)

    def check_coassoc(self, p) -> bool:
        left, right = self.coassoc_sides(p)
        return left == right

    def check_counit(self, p) -> bool:
        p = self.poly(p)
        cop = self.coproduct(p)
        return self.counit_left(cop) == p and self.counit_right(cop) == p

    def check_antipode(self, p) -> bool:
        p = self.poly(p)
        cop = self.coproduct(p)
        unit = self.one(self.counit(p))
        return self.s_tensor_id(cop) == unit and self.id_tensor_s(cop) == unit

    # -- explicit form of the coproduct on delta generators --

    def r_term(self, A: tuple[int, int, int], tail: Sequence[int]) -> Tensor:
        """``R^A_a = Delta(delta^A_a) - delta^A_a (x) 1 - 1 (x) delta^A_a``, checked to lie
        in H^0_{|a|-1} (x) H^0_{|a|-1}."""
        g = self.check_gen(D(*A, tail))
        p = self.gen(g)
        r = self.coproduct(p) - self.tensor(p, 1) - self.tensor(1, p)
        n = len(g.tail)
        if n == 0:
            if not r.is_zero():
                raise GradingViolation(f"R for {g} is not zero")
        elif not tensor_in_graded_ideal(r, n - 1):
            raise GradingViolation(f"R for {g} leaves H^0_{n - 1} (x) H^0_{n - 1}")
        return r
