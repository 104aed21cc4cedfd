"""Frame-bundle calculus over a single chart.

Vector fields and one-forms are stored as component tuples over the chart
coordinates (see :func:`cmhopf.symb.coordinates`): the component at the
index of ``x^mu`` pairs with ``d/dx^mu`` (or ``dx^mu``), the component at the
index of ``y^mu_i`` pairs with ``d/dy^mu_i`` (or ``dy^mu_i``).

Indices in the public API are 1-based, matching the usual tensor notation;
the nested tuples returned by the constructors are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .symb import (
    Coordinate,
    IdenticallyZeroDenominator,
    Polynomial,
    RationalFunction,
    coordinates,
    det,
    equal_rf,
    frame_inverse,
    frame_matrix,
    inverse_matrix,
    nvars,
    parse_polynomial,
    rf_sum,
    xc,
    yc,
)


def _rf(v, dim: int) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    return RationalFunction.constant(dim, v)


def _zero(dim: int) -> RationalFunction:
    return RationalFunction.constant(dim, 0)


def _one(dim: int) -> RationalFunction:
    return RationalFunction.constant(dim, 1)


# -- fields and forms -------------------------------------------------------------


class VectorField:
    """First-order operator ``sum_c comps[c] d/dc`` over the chart coordinates."""

    __slots__ = ("dim", "comps")

    def __init__(self, dim: int, comps: Sequence):
        if len(comps) != nvars(dim):
            raise ValueError(f"expected {nvars(dim)} components, got {len(comps)}")
        self.dim = dim
        self.comps = tuple(_rf(c, dim) for c in comps)

    @classmethod
    def zero(cls, dim: int) -> VectorField:
        return cls(dim, [_zero(dim)] * nvars(dim))

    def base(self, mu: int) -> RationalFunction:
        return self.comps[xc(mu).index(self.dim)]

    def frame(self, mu: int, i: int) -> RationalFunction:
        return self.comps[yc(mu, i).index(self.dim)]

    def __call__(self, f) -> RationalFunction:
        f = _rf(f, self.dim)
        coords = coordinates(self.dim)
        return rf_sum(
            (c * f.diff(coords[k]) for k, c in enumerate(self.comps) if not c.is_zero()), self.dim
        )

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(self.dim, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(self.dim, [a - b for a, b in zip(self.comps, other.comps)])

    def scale(self, f) -> VectorField:
        f = _rf(f, self.dim)
        return VectorField(self.dim, [f * c for c in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.dim == other.dim and all(equal_rf(a, b) for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __repr__(self) -> str:
        names = [c.name for c in coordinates(self.dim)]
        parts = [f"({c})*d/d{n}" for c, n in zip(self.comps, names) if not c.is_zero()]
        return "VectorField(" + (" + ".join(parts) or "0") + ")"


class OneForm:
    """``sum_c comps[c] dc``; pairs with a VectorField by contracting components."""

    __slots__ = ("dim", "comps")

    def __init__(self, dim: int, comps: Sequence):
        if len(comps) != nvars(dim):
            raise ValueError(f"expected {nvars(dim)} components, got {len(comps)}")
        self.dim = dim
        self.comps = tuple(_rf(c, dim) for c in comps)

    @classmethod
    def basis(cls, dim: int, coord: Coordinate) -> OneForm:
        comps = [_zero(dim)] * nvars(dim)
        comps[coord.index(dim)] = _one(dim)
        return cls(dim, comps)

    def __call__(self, v: VectorField) -> RationalFunction:
        return rf_sum(
            (a * b for a, b in zip(self.comps, v.comps) if not a.is_zero() and not b.is_zero()),
            self.dim,
        )

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.dim, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.dim, [a - b for a, b in zip(self.comps, other.comps)])

    def scale(self, f) -> OneForm:
        f = _rf(f, self.dim)
        return OneForm(self.dim, [f * c for c in self.comps])

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.dim == other.dim and all(equal_rf(a, b) for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __repr__(self) -> str:
        names = [c.name for c in coordinates(self.dim)]
        parts = [f"({c})*d{n}" for c, n in zip(self.comps, names) if not c.is_zero()]
        return "OneForm(" + (" + ".join(parts) or "0") + ")"


class TwoForm:
    """Antisymmetric two-form, stored as ``{(a, b): coeff}`` with ``a < b``
    meaning ``coeff * da ^ db`` over coordinate indices."""

    __slots__ = ("dim", "comps")

    def __init__(self, dim: int, comps: dict | None = None):
        self.dim = dim
        self.comps: dict[tuple[int, int], RationalFunction] = {}
        for (a, b), c in (comps or {}).items():
            self._accumulate(a, b, _rf(c, dim))

    def _accumulate(self, a: int, b: int, c: RationalFunction) -> None:
        if a == b or c.is_zero():
            return
        if a > b:
            a, b, c = b, a, -c
        s = self.comps.get((a, b))
        s = c if s is None else s + c
        if s.is_zero():
            self.comps.pop((a, b), None)
        else:
            self.comps[(a, b)] = s

    def component(self, a: Coordinate, b: Coordinate) -> RationalFunction:
        ia, ib = a.index(self.dim), b.index(self.dim)
        if ia == ib:
            return _zero(self.dim)
        if ia < ib:
            return self.comps.get((ia, ib), _zero(self.dim))
        return -self.comps.get((ib, ia), _zero(self.dim))

    def __add__(self, other: TwoForm) -> TwoForm:
        out = TwoForm(self.dim, dict(self.comps))
        for (a, b), c in other.comps.items():
            out._accumulate(a, b, c)
        return out

    def __sub__(self, other: TwoForm) -> TwoForm:
        out = TwoForm(self.dim, dict(self.comps))
        for (a, b), c in other.comps.items():
            out._accumulate(a, b, -c)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.values())

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        names = [c.name for c in coordinates(self.dim)]
        parts = [f"({c})*d{names[a]}^d{names[b]}" for (a, b), c in sorted(self.comps.items())]
        return "TwoForm(" + (" + ".join(parts) or "0") + ")"


def exterior_derivative(theta: OneForm) -> TwoForm:
    coords = coordinates(theta.dim)
    out = TwoForm(theta.dim)
    for b, a_b in enumerate(theta.comps):
        if a_b.is_zero():
            continue
        for c, coord in enumerate(coords):
            out._accumulate(c, b, a_b.diff(coord))
    return out


def wedge(a: OneForm, b: OneForm) -> TwoForm:
    out = TwoForm(a.dim)
    for i, ca in enumerate(a.comps):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b.comps):
            if not cb.is_zero():
                out._accumulate(i, j, ca * cb)
    return out


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    if v.dim != w.dim:
        raise ValueError("vector fields of different dimension")
    return VectorField(v.dim, [v(wc) - w(vc) for vc, wc in zip(v.comps, w.comps)])


# -- connections ----------------------------------------------------------------------


class Connection:
    """Coefficients ``Gamma^mu_{nu alpha}`` depending on the base point only.

    ``coeffs[mu-1][nu-1][alpha-1]`` holds ``Gamma^mu_{nu alpha}``.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Sequence[Sequence[Sequence]]):
        self.dim = dim
        rows = []
        for mu in range(dim):
            rows.append(
                tuple(tuple(_rf(coeffs[mu][nu][al], dim) for al in range(dim)) for nu in range(dim))
            )
        self.coeffs = tuple(rows)
        for c in self.all():
            if not (c.num.is_free_of_frame() and c.den.is_free_of_frame()):
                raise ValueError(f"connection coefficient depends on the frame: {c}")

    @classmethod
    def flat(cls, dim: int) -> Connection:
        z = _zero(dim)
        return cls(dim, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_table(cls, dim: int, table: dict[tuple[int, int, int], object]) -> Connection:
        """Build from ``{(mu, nu, alpha): value}`` with 1-based keys; missing entries are 0."""
        grid = [[[_zero(dim)] * dim for _ in range(dim)] for _ in range(dim)]
        for (mu, nu, al), v in table.items():
            if isinstance(v, str):
                v = parse_polynomial(v, dim)
            grid[mu - 1][nu - 1][al - 1] = _rf(v, dim)
        return cls(dim, grid)

    def __call__(self, mu: int, nu: int, alpha: int) -> RationalFunction:
        return self.coeffs[mu - 1][nu - 1][alpha - 1]

    def all(self) -> Iterable[RationalFunction]:
        for plane in self.coeffs:
            for row in plane:
                yield from row

    def is_flat(self) -> bool:
        return all(c.is_zero() for c in self.all())

    def is_symmetric(self) -> bool:
        d = self.dim
        return all(
            equal_rf(self.coeffs[m][n][a], self.coeffs[m][a][n])
            for m in range(d)
            for n in range(d)
            for a in range(d)
        )

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.dim == other.dim and all(equal_rf(a, b) for a, b in zip(self.all(), other.all()))

    __hash__ = None

    def __repr__(self) -> str:
        d = self.dim
        items = [
            f"G{m + 1}_{n + 1}{a + 1}={self.coeffs[m][n][a]}"
            for m in range(d)
            for n in range(d)
            for a in range(d)
            if not self.coeffs[m][n][a].is_zero()
        ]
        return "Connection(" + ", ".join(items) + ")"


# -- diffeomorphisms ------------------------------------------------------------------


class PolyDiffeo:
    """Polynomial map ``psi`` of the base chart, with its lift to the frame bundle.

    The lift sends ``(x, y)`` to ``(psi(x), d psi(x) . y)``.  Two PolyDiffeos
    are the same group element iff their component polynomials coincide.
    """

    def __init__(self, components: Sequence[Polynomial]):
        dim = len(components)
        if dim < 1:
            raise ValueError("a diffeomorphism needs at least one component")
        comps = []
        for c in components:
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(dim, c)
            if c.dim != dim:
                raise ValueError("component dimension does not match the number of components")
            if not c.is_free_of_frame():
                raise ValueError(f"diffeomorphism component depends on the frame: {c}")
            comps.append(c)
        self.dim = dim
        self.components = tuple(comps)
        if det(self.jacobian).is_zero():
            raise IdenticallyZeroDenominator("Jacobian determinant is identically zero")

    @classmethod
    def identity(cls, dim: int) -> PolyDiffeo:
        return cls([Polynomial.var(dim, xc(mu)) for mu in range(1, dim + 1)])

    @classmethod
    def parse(cls, texts: Sequence[str], dim: int) -> PolyDiffeo:
        if len(texts) != dim:
            raise ValueError(f"expected {dim} components, got {len(texts)}")
        return cls([parse_polynomial(t, dim) for t in texts])

    @cached_property
    def jacobian(self) -> tuple[tuple[Polynomial, ...], ...]:
        """``jacobian[mu][nu]`` = d psi^mu / d x^nu."""
        return tuple(
            tuple(c.diff(xc(nu)) for nu in range(1, self.dim + 1)) for c in self.components
        )

    @cached_property
    def jacobian_det(self) -> Polynomial:
        return det(self.jacobian)

    @cached_property
    def inverse_jacobian(self) -> list[list[RationalFunction]]:
        return inverse_matrix(self.jacobian, self.dim)

    @cached_property
    def hessian(self) -> tuple:
        """``hessian[mu][a][b]`` = d^2 psi^mu / dx^a dx^b."""
        d = self.dim
        return tuple(
            tuple(tuple(self.jacobian[mu][a].diff(xc(b + 1)) for b in range(d)) for a in range(d))
            for mu in range(d)
        )

    @cached_property
    def lift_images(self) -> tuple[Polynomial, ...]:
        """Image of every chart coordinate under the lift, in enumeration order."""
        d = self.dim
        y = frame_matrix(d)
        ims = list(self.components)
        for mu in range(d):
            for i in range(d):
                ims.append(sum((self.jacobian[mu][nu] * y[nu][i] for nu in range(d)), Polynomial.constant(d, 0)))
        return tuple(ims)

    @cached_property
    def lift_jacobian(self) -> tuple[tuple[Polynomial, ...], ...]:
        """``lift_jacobian[t][s]`` = d(lift image of coordinate t) / d(coordinate s)."""
        coords = coordinates(self.dim)
        return tuple(tuple(im.diff(c) for c in coords) for im in self.lift_images)

    def pull(self, f) -> RationalFunction:
        """``f o lift``."""
        f = _rf(f, self.dim)
        return f.subs(self.lift_images)

    def compose(self, inner: PolyDiffeo) -> PolyDiffeo:
        """``self o inner``."""
        if inner.dim != self.dim:
            raise ValueError("dimension mismatch")
        ims = list(inner.components) + [None] * (self.dim * self.dim)
        return PolyDiffeo([c.subs(ims) for c in self.components])

    def is_identity(self) -> bool:
        return self == PolyDiffeo.identity(self.dim)

    def __eq__(self, other):
        if not isinstance(other, PolyDiffeo):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self) -> str:
        if self.is_identity():
            return "id"
        return ", ".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"PolyDiffeo([{self}])"


# -- the geometric objects ----------------------------------------------------------------


def soldering_form(dim: int) -> list[OneForm]:
    """``alpha^j = (y^{-1})^j_mu dx^mu``; entry ``j-1`` is alpha^j."""
    yinv = frame_inverse(dim)
    out = []
    for j in range(dim):
        comps = [_zero(dim)] * nvars(dim)
        for mu in range(dim):
            comps[mu] = yinv[j][mu]
        out.append(OneForm(dim, comps))
    return out


def connection_form(gamma: Connection) -> list[list[OneForm]]:
    """``omega[i-1][j-1]`` = (y^{-1})^i_mu (dy^mu_j + Gamma^mu_{nu alpha} y^nu_j dx^alpha)."""
    d = gamma.dim
    yinv = frame_inverse(d)
    y = frame_matrix(d)
    omega = []
    for i in range(d):
        row = []
        for j in range(d):
            comps = [_zero(d)] * nvars(d)
            for mu in range(d):
                comps[yc(mu + 1, j + 1).index(d)] = yinv[i][mu]
            for al in range(d):
                terms = []
                for mu in range(d):
                    for nu in range(d):
                        g = gamma.coeffs[mu][nu][al]
                        if not g.is_zero():
                            terms.append(yinv[i][mu] * g * y[nu][j])
                comps[al] = rf_sum(terms, d)
            row.append(OneForm(d, comps))
        omega.append(row)
    return omega


def vertical_fields(dim: int) -> dict[tuple[int, int], VectorField]:
    """``{(j, i): Y^j_i}`` with ``Y^j_i = y^mu_i d/dy^mu_j``."""
    y = frame_matrix(dim)
    out = {}
    for j in range(1, dim + 1):
        for i in range(1, dim + 1):
            comps = [_zero(dim)] * nvars(dim)
            for mu in range(1, dim + 1):
                comps[yc(mu, j).index(dim)] = RationalFunction(y[mu - 1][i - 1])
            out[(j, i)] = VectorField(dim, comps)
    return out


def horizontal_field(gamma: Connection, i: int) -> VectorField:
    """``X_i = y^mu_i (d_mu - Gamma^nu_{alpha mu} y^alpha_j d^j_nu)``."""
    d = gamma.dim
    y = frame_matrix(d)
    comps = [_zero(d)] * nvars(d)
    for mu in range(d):
        comps[mu] = RationalFunction(y[mu][i - 1])
    for nu in range(d):
        for j in range(d):
            terms = []
            for mu in range(d):
                for al in range(d):
                    g = gamma.coeffs[nu][al][mu]
                    if not g.is_zero():
                        terms.append(g * (y[mu][i - 1] * y[al][j]))
            comps[yc(nu + 1, j + 1).index(d)] = -rf_sum(terms, d)
    return VectorField(d, comps)


def horizontal_fields(gamma: Connection) -> list[VectorField]:
    return [horizontal_field(gamma, i) for i in range(1, gamma.dim + 1)]


def curvature_torsion(gamma: Connection):
    """Curvature ``R[k][l][i][j]`` and torsion ``T[k][i][j]`` (0-based) such that
    ``[X_i, X_j] = R^k_{lij} Y^l_k + T^k_{ij} X_k``."""
    d = gamma.dim
    yinv = frame_inverse(d)
    y = frame_matrix(d)
    G = gamma.coeffs
    # curvature of Gamma in base indices: K[s][r][m][n]
    K = {}
    for s in range(d):
        for r in range(d):
            for m in range(d):
                for n in range(d):
                    t = G[s][r][m].diff(xc(n + 1)) - G[s][r][n].diff(xc(m + 1))
                    for b in range(d):
                        t = t + G[b][r][m] * G[s][b][n] - G[b][r][n] * G[s][b][m]
                    K[s, r, m, n] = t
    R = [[[[None] * d for _ in range(d)] for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for l in range(d):
            for i in range(d):
                for j in range(d):
                    terms = []
                    for (s, r, m, n), t in K.items():
                        if t.is_zero():
                            continue
                        terms.append(yinv[k][s] * t * (y[r][l] * y[m][i] * y[n][j]))
                    R[k][l][i][j] = rf_sum(terms, d)
    T = [[[None] * d for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for i in range(d):
            for j in range(d):
                terms = []
                for r in range(d):
                    for m in range(d):
                        for n in range(d):
                            t = G[r][m][n] - G[r][n][m]
                            if not t.is_zero():
                                terms.append(yinv[k][r] * t * (y[m][i] * y[n][j]))
                T[k][i][j] = rf_sum(terms, d)
    return R, T


def torsion_form(gamma: Connection) -> list[TwoForm]:
    """Closed form ``Theta^i = (y^{-1})^i_mu Gamma^mu_{nu alpha} dx^alpha ^ dx^nu``."""
    d = gamma.dim
    yinv = frame_inverse(d)
    out = []
    for i in range(d):
        form = TwoForm(d)
        for mu in range(d):
            for nu in range(d):
                for al in range(d):
                    g = gamma.coeffs[mu][nu][al]
                    if not g.is_zero():
                        form._accumulate(al, nu, yinv[i][mu] * g)
        out.append(form)
    return out


def structure_torsion(gamma: Connection) -> list[TwoForm]:
    """``Theta^i = d alpha^i + omega^i_j ^ alpha^j`` computed from the forms themselves."""
    d = gamma.dim
    alpha = soldering_form(d)
    omega = connection_form(gamma)
    out = []
    for i in range(d):
        form = exterior_derivative(alpha[i])
        for j in range(d):
            form = form + wedge(omega[i][j], alpha[j])
        out.append(form)
    return out


def pullback_gamma(gamma: Connection, psi: PolyDiffeo) -> Connection:
    """Connection coefficients of the pulled-back connection form."""
    d = gamma.dim
    if psi.dim != d:
        raise ValueError("dimension mismatch")
    inv = psi.inverse_jacobian
    J = psi.jacobian
    H = psi.hessian
    base_ims = list(psi.components) + [None] * (d * d)
    G_psi = [[[gamma.coeffs[a][b][c].subs(base_ims) for c in range(d)] for b in range(d)] for a in range(d)]
    grid = [[[None] * d for _ in range(d)] for _ in range(d)]
    for g in range(d):
        for be in range(d):
            for al in range(d):
                terms = []
                for de in range(d):
                    if inv[g][de].is_zero():
                        continue
                    inner = []
                    for ep in range(d):
                        for ze in range(d):
                            c = G_psi[de][ep][ze]
                            if not c.is_zero():
                                inner.append(c * (J[ep][be] * J[ze][al]))
                    h = H[de][al][be]
                    if not h.is_zero():
                        inner.append(RationalFunction(h))
                    if inner:
                        terms.append(inv[g][de] * rf_sum(inner, d))
                grid[g][be][al] = rf_sum(terms, d)
    return Connection(d, grid)


def pullback_oneform(theta: OneForm, psi: PolyDiffeo) -> OneForm:
    """``(psi~^* theta)|_p (V) = theta|_{psi~(p)} (psi~_* V)``."""
    d = theta.dim
    LJ = psi.lift_jacobian
    pulled = [psi.pull(a) if not a.is_zero() else None for a in theta.comps]
    comps = []
    for s in range(nvars(d)):
        terms = [pulled[t] * LJ[t][s] for t in range(nvars(d)) if pulled[t] is not None and not LJ[t][s].is_zero()]
        comps.append(rf_sum(terms, d))
    return OneForm(d, comps)


def pushforward_matches(v: VectorField, w: VectorField, psi: PolyDiffeo) -> bool:
    """True iff ``psi~_* (v|_p) = w|_{psi~(p)}`` for every p, checked on the
    coordinate basis of one-forms (pulled-back formulation)."""
    d = v.dim
    LJ = psi.lift_jacobian
    for t in range(nvars(d)):
        lhs = rf_sum((vc * LJ[t][s] for s, vc in enumerate(v.comps) if not LJ[t][s].is_zero()), d)
        rhs = psi.pull(w.comps[t])
        if not equal_rf(lhs, rhs):
            return False
    return True


# -- verification ------------------------------------------------------------------


@dataclass
class IdentityCheck:
    identity: str
    status: bool
    counterexample: str | None = None

    def as_dict(self) -> dict:
        out = {"identity": self.identity, "status": "PASS" if self.status else "FAIL"}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _first_failure(pairs: Iterable[tuple[str, RationalFunction, RationalFunction]]) -> str | None:
    for label, a, b in pairs:
        if not equal_rf(a, b):
            return f"{label}: {a} != {b}"
    return None


def _check(name: str, pairs) -> IdentityCheck:
    bad = _first_failure(pairs)
    return IdentityCheck(name, bad is None, bad)


def check_lift_invariance(gamma: Connection, psi: PolyDiffeo) -> list[IdentityCheck]:
    """Verify the four transformation rules of the lifted diffeomorphism."""
    d = gamma.dim
    alpha = soldering_form(d)
    omega = connection_form(gamma)
    zero, one = _zero(d), _one(d)
    results = []

    def alpha_pairs():
        for j in range(d):
            pulled = pullback_oneform(alpha[j], psi)
            for k, (a, b) in enumerate(zip(pulled.comps, alpha[j].comps)):
                yield f"alpha^{j + 1}[{coordinates(d)[k].name}]", a, b

    results.append(_check("soldering form is invariant", alpha_pairs()))

    gamma_t = pullback_gamma(gamma, psi)
    omega_t = connection_form(gamma_t)
    pulled_omega = [[pullback_oneform(omega[i][j], psi) for j in range(d)] for i in range(d)]

    def omega_pairs():
        for i in range(d):
            for j in range(d):
                for k, (a, b) in enumerate(zip(pulled_omega[i][j].comps, omega_t[i][j].comps)):
                    yield f"omega^{i + 1}_{j + 1}[{coordinates(d)[k].name}]", a, b

    results.append(_check("pulled-back connection form has the transformed coefficients", omega_pairs()))

    Ys = vertical_fields(d)
    LJ = psi.lift_jacobian

    def y_pairs():
        for (j, i), Y in Ys.items():
            for t in range(nvars(d)):
                theta = OneForm.basis(d, coordinates(d)[t])
                lhs = pullback_oneform(theta, psi)(Y)
                rhs = psi.pull(theta(Y))
                yield f"Y^{j}_{i} on d{coordinates(d)[t].name}", lhs, rhs

    results.append(_check("vertical fields are invariant", y_pairs()))

    Xt = horizontal_fields(gamma_t)

    def x_pairs():
        for i in range(d):
            for a in range(d):
                for b in range(d):
                    yield f"omega~^{a + 1}_{b + 1}(X~_{i + 1})", pulled_omega[a][b](Xt[i]), zero
            for j in range(d):
                yield f"alpha^{j + 1}(X~_{i + 1})", alpha[j](Xt[i]), one if i == j else zero

    results.append(_check("transformed horizontal fields are horizontal and dual to alpha", x_pairs()))

    X = horizontal_fields(gamma)
    bad = None
    for i in range(d):
        if not pushforward_matches(Xt[i], X[i], psi):
            bad = f"X~_{i + 1} does not push forward to X_{i + 1}"
            break
    results.append(IdentityCheck("transformed horizontal fields push forward to X", bad is None, bad))
    return results


def check_equivariance(gamma: Connection, g: Sequence[Sequence]) -> bool:
    """``omega|_{pg}(R_{g*} V) = g^{-1} omega|_p(V) g`` on the coordinate basis of V."""
    d = gamma.dim
    omega = connection_form(gamma)
    gm = [[_rf(g[a][b], d) for b in range(d)] for a in range(d)]
    ginv = inverse_matrix(gm, d)
    y = frame_matrix(d)
    ims: list = [None] * nvars(d)
    for mu in range(d):
        for i in range(d):
            ims[yc(mu + 1, i + 1).index(d)] = rf_sum((y[mu][k] * gm[k][i] for k in range(d)), d)
    omega_pg = [[OneForm(d, [c.subs(ims) for c in omega[a][b].comps]) for b in range(d)] for a in range(d)]
    for c in coordinates(d):
        idx = c.index(d)
        lhs = [[None] * d for _ in range(d)]
        for a in range(d):
            for b in range(d):
                if c.kind == "x":
                    lhs[a][b] = omega_pg[a][b].comps[idx]
                else:
                    # R_{g*} d/dy^mu_j = g^j_i d/dy^mu_i
                    lhs[a][b] = rf_sum(
                        (omega_pg[a][b].comps[yc(c.mu, i + 1).index(d)] * gm[c.i - 1][i] for i in range(d)), d
                    )
        base = [[omega[a][b].comps[idx] for b in range(d)] for a in range(d)]
        for a in range(d):
            for b in range(d):
                rhs = rf_sum(
                    (ginv[a][p] * base[p][q] * gm[q][b] for p in range(d) for q in range(d)), d
                )
                if not equal_rf(lhs[a][b], rhs):
                    return False
    return True


def check_structure_equation(gamma: Connection) -> IdentityCheck:
    """``[X_i, X_j] = R^k_{lij} Y^l_k + Theta^k_{ij} X_k`` with the closed-form components."""
    d = gamma.dim
    X = horizontal_fields(gamma)
    Ys = vertical_fields(d)
    R, T = curvature_torsion(gamma)
    for i in range(d):
        for j in range(d):
            lhs = lie_bracket(X[i], X[j])
            rhs = VectorField.zero(d)
            for k in range(d):
                for l in range(d):
                    if not R[k][l][i][j].is_zero():
                        rhs = rhs + Ys[(l + 1, k + 1)].scale(R[k][l][i][j])
                if not T[k][i][j].is_zero():
                    rhs = rhs + X[k].scale(T[k][i][j])
            if lhs != rhs:
                return IdentityCheck("[X_i, X_j] = R Y + Theta X", False, f"fails for i={i + 1}, j={j + 1}")
    return IdentityCheck("[X_i, X_j] = R Y + Theta X", True)


def torsion_vanishes(gamma: Connection) -> bool:
    return all(form.is_zero() for form in torsion_form(gamma))


def random_connection(rng: random.Random, dim: int, symmetric: bool | None = None) -> Connection:
    """Coefficients affine in x with small integer entries; optionally symmetrized in the lower pair."""
    if symmetric is None:
        symmetric = rng.random() < 0.5
    xs = [Polynomial.var(dim, xc(mu)) for mu in range(1, dim + 1)]
    table: dict = {}
    for mu in range(1, dim + 1):
        for nu in range(1, dim + 1):
            for al in range(1, dim + 1):
                if symmetric and al < nu:
                    table[(mu, nu, al)] = table[(mu, al, nu)]
                    continue
                p = Polynomial.constant(dim, rng.randint(-2, 2))
                for x in xs:
                    p = p + x * rng.randint(-1, 1)
                table[(mu, nu, al)] = p
    if not symmetric:
        # make sure the sample really is non-symmetric
        key = (1, 1, 2) if dim > 1 else None
        if key and equal_rf(RationalFunction(table[key]), RationalFunction(table[(1, 2, 1)])):
            table[key] = table[key] + 1
    return Connection.from_table(dim, table)
