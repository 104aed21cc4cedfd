"""Exact polynomials and rational functions in frame-bundle chart coordinates.

A chart of dimension ``dim`` carries the base coordinates ``x1..x<dim>`` and
the frame coordinates ``y<mu>_<i>`` (the mu-th component of the i-th frame
vector).  Variables are enumerated base first, then frame coordinates in
``(mu, i)`` lexicographic order; exponent vectors are dense tuples over that
enumeration.

Coefficients are :class:`fractions.Fraction`.  Rational functions are not
reduced by a GCD; equality is decided by cross-multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Sequence, Union


class IdenticallyZeroDenominator(ZeroDivisionError):
    """A denominator collapsed to the zero polynomial."""


class DivisionByZeroAtPoint(ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""


class Coordinate(NamedTuple):
    kind: str  # "x" or "y"
    mu: int
    i: int = 0

    def index(self, dim: int) -> int:
        if not 1 <= self.mu <= dim:
            raise ValueError(f"coordinate {self.name} out of range for dim {dim}")
        if self.kind == "x":
            return self.mu - 1
        if not 1 <= self.i <= dim:
            raise ValueError(f"coordinate {self.name} out of range for dim {dim}")
        return dim + (self.mu - 1) * dim + (self.i - 1)

    @property
    def name(self) -> str:
        if self.kind == "x":
            return f"x{self.mu}"
        return f"y{self.mu}_{self.i}"


def xc(mu: int) -> Coordinate:
    return Coordinate("x", mu)


def yc(mu: int, i: int) -> Coordinate:
    return Coordinate("y", mu, i)


def nvars(dim: int) -> int:
    return dim + dim * dim


@lru_cache(maxsize=None)
def coordinates(dim: int) -> tuple[Coordinate, ...]:
    """All chart coordinates in enumeration order."""
    base = [xc(mu) for mu in range(1, dim + 1)]
    frame = [yc(mu, i) for mu in range(1, dim + 1) for i in range(1, dim + 1)]
    return tuple(base + frame)


def _coef(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _order_key(exps: tuple[int, ...]):
    # graded lexicographic
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial over Q in the chart coordinates of ``dim``."""

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.dim = dim
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _coef(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> Polynomial:
        # terms already free of zeros and Fraction-valued
        p = object.__new__(cls)
        p.dim = dim
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, dim: int, c=1) -> Polynomial:
        c = _coef(c)
        return cls._raw(dim, {(0,) * nvars(dim): c} if c else {})

    @classmethod
    def var(cls, dim: int, coord: Coordinate) -> Polynomial:
        e = [0] * nvars(dim)
        e[coord.index(dim)] = 1
        return cls._raw(dim, {tuple(e): Fraction(1)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * nvars(self.dim), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def depends_on(self, coord: Coordinate) -> bool:
        k = coord.index(self.dim)
        return any(e[k] for e in self.terms)

    def is_free_of_frame(self) -> bool:
        d = self.dim
        return all(not any(e[d:]) for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms, key=_order_key)
        return e, self.terms[e]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        return Polynomial.constant(self.dim, other)

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if not isinstance(other, Polynomial):
            c = _coef(other)
            if not c:
                return Polynomial._raw(self.dim, {})
            return Polynomial._raw(self.dim, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(Polynomial.constant(self.dim, 1), self) ** (-n)
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        return RationalFunction(self._coerce(other)) / RationalFunction(self)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(self.dim, other)
            except TypeError:
                return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------

    def diff(self, coord: Coordinate) -> Polynomial:
        k = coord.index(self.dim)
        out = {}
        for e, c in self.terms.items():
            n = e[k]
            if n:
                e2 = e[:k] + (n - 1,) + e[k + 1:]
                out[e2] = c * n
        return Polynomial._raw(self.dim, out)

    def subs(self, images: Sequence, dim: int | None = None):
        """Substitute ``images[v]`` for variable number ``v``.

        Images may be Polynomials, RationalFunctions, or ``None`` for the
        identity.  ``dim`` is the chart dimension of the result (defaults to
        this polynomial's).
        """
        dim = self.dim if dim is None else dim
        rational = any(isinstance(im, RationalFunction) for im in images)
        one = Polynomial.constant(dim, 1)
        ims = []
        for v, im in enumerate(images):
            if im is None:
                im = Polynomial.var(dim, coordinates(self.dim)[v])
            elif not isinstance(im, (Polynomial, RationalFunction)):
                im = Polynomial.constant(dim, im)
            ims.append(RationalFunction(im) if rational and isinstance(im, Polynomial) else im)
        powers: dict[tuple[int, int], object] = {}

        def power(v, n):
            key = (v, n)
            if key not in powers:
                powers[key] = ims[v] if n == 1 else power(v, n - 1) * ims[v]
            return powers[key]

        acc_terms: list = []
        for e, c in self.terms.items():
            t = RationalFunction(one * c) if rational else one * c
            for v, n in enumerate(e):
                if n:
                    t = t * power(v, n)
            acc_terms.append(t)
        if rational:
            return rf_sum(acc_terms, dim)
        out: dict = {}
        for t in acc_terms:
            for e, c in t.terms.items():
                out[e] = out.get(e, 0) + c
        return Polynomial._raw(dim, {e: c for e, c in out.items() if c})

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, n in enumerate(e):
                if n:
                    t *= Fraction(point[v]) ** n
            total += t
        return total

    def divexact(self, other: Polynomial) -> Polynomial | None:
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        if other.is_zero():
            raise IdenticallyZeroDenominator("division by the zero polynomial")
        if self.is_zero():
            return self
        le, lc = other.leading_term()
        rem = dict(self.terms)
        quot: dict = {}
        other_items = list(other.terms.items())
        while rem:
            e = max(rem, key=_order_key)
            c = rem[e]
            de = tuple(a - b for a, b in zip(e, le))
            if min(de) < 0:
                return None
            q = c / lc
            quot[de] = q
            for e2, c2 in other_items:
                e3 = tuple(a + b for a, b in zip(de, e2))
                v = rem.get(e3, 0) - q * c2
                if v:
                    rem[e3] = v
                else:
                    rem.pop(e3, None)
        return Polynomial._raw(self.dim, quot)

    def monomial_content(self) -> tuple[int, ...]:
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            m = [min(a, b) for a, b in zip(m, e)]
        return tuple(m)

    def shift_down(self, e0: tuple[int, ...]) -> Polynomial:
        return Polynomial._raw(
            self.dim, {tuple(a - b for a, b in zip(e, e0)): c for e, c in self.terms.items()}
        )

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = [c.name for c in coordinates(self.dim)]
        parts = []
        for e in sorted(self.terms, key=_order_key, reverse=True):
            c = self.terms[e]
            factors = []
            for v, n in enumerate(e):
                if n == 1:
                    factors.append(names[v])
                elif n:
                    factors.append(f"{names[v]}^{n}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.dim}, {str(self)!r})"


class RationalFunction:
    """Quotient ``num/den`` of Polynomials; the denominator is never zero.

    Construction applies a cheap normalization (constant denominators folded
    in, common monomial factors removed, monic denominator, exact division
    when the denominator divides the numerator) but no GCD.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize: bool = True):
        if not isinstance(num, Polynomial):
            if den is None:
                raise TypeError("constant RationalFunction needs a Polynomial to fix dim")
            num = Polynomial.constant(den.dim, num)
        if den is None:
            den = Polynomial.constant(num.dim, 1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(num.dim, den)
        if num.dim != den.dim:
            raise ValueError(f"dimension mismatch: {num.dim} vs {den.dim}")
        if den.is_zero():
            raise IdenticallyZeroDenominator("denominator is identically zero")
        if normalize:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def dim(self) -> int:
        return self.num.dim

    @classmethod
    def constant(cls, dim: int, c=0) -> RationalFunction:
        return cls(Polynomial.constant(dim, c))

    @classmethod
    def var(cls, dim: int, coord: Coordinate) -> RationalFunction:
        return cls(Polynomial.var(dim, coord))

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial.constant(self.dim, other))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        d1, d2 = self.den, other.den
        if d1 == d2:
            return RationalFunction(self.num + other.num, d1)
        if d1.is_constant():
            return RationalFunction(self.num * d2 + other.num, d2)
        if d2.is_constant():
            return RationalFunction(self.num + other.num * d1, d1)
        q = d2.divexact(d1)
        if q is not None:
            return RationalFunction(self.num * q + other.num, d2)
        q = d1.divexact(d2)
        if q is not None:
            return RationalFunction(self.num + other.num * q, d1)
        return RationalFunction(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction(Polynomial.constant(self.dim, 0))
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d1.is_constant():
            q = n2.divexact(d1)
            if q is not None:
                n2, d1 = q, Polynomial.constant(self.dim, 1)
        if not d2.is_constant():
            q = n1.divexact(d2)
            if q is not None:
                n1, d2 = q, Polynomial.constant(self.dim, 1)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise IdenticallyZeroDenominator("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, Polynomial, int, Fraction)):
            return NotImplemented
        try:
            other = self._coerce(other)
        except ValueError:
            return False
        return equal_rf(self, other)

    __hash__ = None

    def diff(self, coord: Coordinate) -> RationalFunction:
        dn = self.num.diff(coord)
        if self.den.is_constant():
            return RationalFunction(dn, self.den)
        dd = self.den.diff(coord)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, images: Sequence, dim: int | None = None) -> RationalFunction:
        num = self.num.subs(images, dim)
        den = self.den.subs(images, dim)
        num = num if isinstance(num, RationalFunction) else RationalFunction(num)
        den = den if isinstance(den, RationalFunction) else RationalFunction(den)
        if den.is_zero():
            raise IdenticallyZeroDenominator("substitution made the denominator vanish")
        return num / den

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise DivisionByZeroAtPoint("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def depends_on(self, coord: Coordinate) -> bool:
        return not self.diff(coord).is_zero()

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num * (1 / self.den.constant_value()))
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.dim}, {str(self)!r})"


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    dim = num.dim
    if num.is_zero():
        return num, Polynomial.constant(dim, 1)
    if den.is_constant():
        c = den.constant_value()
        if c != 1:
            num = num * (1 / c)
        return num, Polynomial.constant(dim, 1)
    m1, m2 = num.monomial_content(), den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(m1, m2))
    if any(common):
        num, den = num.shift_down(common), den.shift_down(common)
        if den.is_constant():
            return _normalize(num, den)
    scale = _primitive_scale(den)
    if scale != 1:
        num, den = num * scale, den * scale
    q = num.divexact(den)
    if q is not None:
        return q, Polynomial.constant(dim, 1)
    return num, den


def _primitive_scale(p: Polynomial) -> Fraction:
    """Factor making ``p`` an integer polynomial with coprime coefficients and
    positive leading coefficient."""
    lcm_den = 1
    g = 0
    for c in p.terms.values():
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    for c in p.terms.values():
        g = gcd(g, int(c * lcm_den))
    _, lc = p.leading_term()
    scale = Fraction(lcm_den, g)
    return -scale if lc < 0 else scale


def rf_sum(items: Iterable, dim: int) -> RationalFunction:
    """Sum of RationalFunctions, grouping equal denominators first."""
    groups: dict[Polynomial, Polynomial] = {}
    for t in items:
        if not isinstance(t, RationalFunction):
            t = RationalFunction(t) if isinstance(t, Polynomial) else RationalFunction.constant(dim, t)
        if t.num.is_zero():
            continue
        groups[t.den] = groups.get(t.den, Polynomial.constant(dim, 0)) + t.num
    total = RationalFunction.constant(dim, 0)
    for den, num in groups.items():
        if not num.is_zero():
            total = total + RationalFunction(num, den)
    return total


# -- top-level operations ----------------------------------------------------

Scalar = Union[int, Fraction]


def add(p: RationalFunction, q: RationalFunction) -> RationalFunction:
    return p + q


def mul(p: RationalFunction, q: RationalFunction) -> RationalFunction:
    return p * q


def neg(p: RationalFunction) -> RationalFunction:
    return -p


def differentiate(p: RationalFunction, v: Coordinate) -> RationalFunction:
    return p.diff(v)


def _images(dim: int, assignment: Mapping[Coordinate, object]) -> list:
    ims: list = [None] * nvars(dim)
    for coord, im in assignment.items():
        ims[coord.index(dim)] = im
    return ims


def substitute(p: RationalFunction, assignment: Mapping[Coordinate, object]) -> RationalFunction:
    """Compose ``p`` with the map sending each listed coordinate to its image.

    Coordinates missing from ``assignment`` are left unchanged.
    """
    if isinstance(p, Polynomial):
        p = RationalFunction(p)
    return p.subs(_images(p.dim, assignment))


def equal_rf(p, q) -> bool:
    if isinstance(p, Polynomial):
        p = RationalFunction(p, normalize=False)
    if isinstance(q, Polynomial):
        q = RationalFunction(q, normalize=False)
    if p.den == q.den:
        return p.num == q.num
    return (p.num * q.den - q.num * p.den).is_zero()


def eval_at(p, point: Mapping[Coordinate, object]) -> Fraction:
    """Exact value of ``p`` at a point; unlisted coordinates default to 0."""
    if isinstance(p, Polynomial):
        p = RationalFunction(p)
    vals = [Fraction(0)] * nvars(p.dim)
    for coord, v in point.items():
        vals[coord.index(p.dim)] = Fraction(v)
    return p.evaluate(vals)


# -- matrices -------------------------------------------------------------------


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for a in range(len(seen)):
        for b in range(a + 1, len(seen)):
            if seen[a] > seen[b]:
                sign = -sign
    return sign


def det(matrix: Sequence[Sequence]):
    """Leibniz determinant of a small square matrix (entries support + and *)."""
    n = len(matrix)
    total = None
    for perm in permutations(range(n)):
        term = None
        for r, c in enumerate(perm):
            entry = matrix[r][c]
            term = entry if term is None else term * entry
        term = term * _perm_sign(perm)
        total = term if total is None else total + term
    return total


def inverse_matrix(matrix: Sequence[Sequence], dim: int) -> list[list[RationalFunction]]:
    """Inverse via adjugate over the determinant."""
    n = len(matrix)
    d = det(matrix)
    d_rf = d if isinstance(d, RationalFunction) else RationalFunction(d)
    if d_rf.is_zero():
        raise IdenticallyZeroDenominator("singular matrix")
    if n == 1:
        return [[RationalFunction.constant(dim, 1) / d_rf]]
    inv = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            minor = [[matrix[a][b] for b in range(n) if b != c] for a in range(n) if a != r]
            cof = det(minor) * (-1 if (r + c) % 2 else 1)
            cof_rf = cof if isinstance(cof, RationalFunction) else RationalFunction(cof)
            inv[c][r] = cof_rf / d_rf
    return inv


@lru_cache(maxsize=None)
def frame_matrix(dim: int) -> tuple[tuple[Polynomial, ...], ...]:
    """``y[mu][i]`` = the coordinate polynomial y^mu_i (0-based indices)."""
    return tuple(
        tuple(Polynomial.var(dim, yc(mu, i)) for i in range(1, dim + 1)) for mu in range(1, dim + 1)
    )


@lru_cache(maxsize=None)
def frame_inverse(dim: int) -> tuple[tuple[RationalFunction, ...], ...]:
    """``yinv[i][mu]`` = (y^{-1})^i_mu, so that y^mu_i yinv^i_nu = delta^mu_nu."""
    return tuple(tuple(row) for row in inverse_matrix(frame_matrix(dim), dim))


# -- parsing ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|y\d+_\d+)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected input", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _var_coord(name: str) -> Coordinate:
    if name[0] == "x":
        return xc(int(name[1:]))
    mu, i = name[1:].split("_")
    return yc(int(mu), int(i))


def parse_rational_function(text: str, dim: int) -> RationalFunction:
    """Parse e.g. ``"(x1^2 + 3/4*y1_1)/(1 + x1)"`` in the chart of ``dim``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        t = toks[pos]
        if kind and (t[0] != kind or (value is not None and t[1] != value)):
            raise ParseError(f"expected {value or kind}", t[2])
        pos += 1
        return t

    def expr():
        t = peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        val = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = power()
        while True:
            t = peek()
            if t[0] == "op" and t[1] in "*/":
                take()
                rhs = power()
                if t[1] == "/":
                    if rhs.is_zero():
                        raise ParseError("division by zero", t[2])
                    val = val / rhs
                else:
                    val = val * rhs
            else:
                return val

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            t = take("num")
            return base ** t[1]
        return base

    def atom():
        t = peek()
        if t[0] == "num":
            take()
            return RationalFunction.constant(dim, t[1])
        if t[0] == "var":
            take()
            coord = _var_coord(t[1])
            try:
                coord.index(dim)
            except ValueError as exc:
                raise ParseError(str(exc), t[2]) from None
            return RationalFunction.var(dim, coord)
        if t[0] == "op" and t[1] == "(":
            take()
            v = expr()
            take("op", ")")
            return v
        if t[0] == "op" and t[1] == "-":
            take()
            return -atom()
        raise ParseError("expected a number, variable or '('", t[2])

    val = expr()
    if peek()[0] != "end":
        raise ParseError("trailing input", peek()[2])
    return val


def parse_polynomial(text: str, dim: int) -> Polynomial:
    rf = parse_rational_function(text, dim)
    if not rf.den.is_constant():
        raise ParseError(f"not a polynomial: {text!r}", 0)
    return rf.num * (1 / rf.den.constant_value())
