"""Verification suites driving the invariant checks of every module.

Each suite returns a :class:`Report` made of named :class:`CheckResult` rows in a
fixed order, so output is reproducible for a given ``(dim, seed, max_tail)``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from . import crossed, geometry, trees
from .hopf import Gen, HopfAlgebra, HopfPoly, X, commutator_table

SUITES = ("hopf", "trees", "oracle", "geometry")


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": "PASS" if self.passed else "FAIL", "seconds": round(self.seconds, 4)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    dim: int
    seed: int
    max_tail: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def run(self, name: str, items: Iterable, check: Callable[[object], bool], label: Callable[[object], str] = str) -> None:
        """Run ``check`` on every item; stop at and record the first counterexample."""
        start = time.perf_counter()
        detail = ""
        ok = True
        count = 0
        for item in items:
            count += 1
            try:
                good = check(item)
            except (AssertionError, ValueError, ArithmeticError) as exc:
                good, detail = False, f"{label(item)}: {exc}"
            if not good:
                ok = False
                detail = detail or f"counterexample: {label(item)}"
                break
        if ok:
            detail = f"cases={count}"
        self.results.append(CheckResult(name, ok, time.perf_counter() - start, detail))

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "dim": self.dim,
            "seed": self.seed,
            "max_tail": self.max_tail,
            "status": "PASS" if self.passed else "FAIL",
            "checks": [r.as_dict() for r in self.results],
        }

    def lines(self) -> list[str]:
        out = [f"suite {self.suite} dim={self.dim} seed={self.seed} max_tail={self.max_tail}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            out.append(f"  {status} {r.name} ({r.seconds:.3f}s) {r.detail}".rstrip())
        out.append(f"{'PASS' if self.passed else 'FAIL'} {self.suite}")
        return out


def random_pbw_monomials(H: HopfAlgebra, rng: random.Random, count: int, max_degree: int, max_tail: int) -> list[HopfPoly]:
    """Seeded products of 1..max_degree generators, brought to PBW normal form."""
    pool = H.x_generators() + H.y_generators() + [g for g in H.delta_generators(max_tail) if g.is_reduced]
    out = []
    for _ in range(count):
        n = rng.randint(1, max(1, max_degree))
        out.append(H.word(*sorted(rng.choice(pool) for _ in range(n))))
    return out


def _jacobi(H: HopfAlgebra, triple: tuple[Gen, Gen, Gen]) -> bool:
    a, b, c = (H.gen(g) for g in triple)
    return (a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))).is_zero()


def suite_hopf(dim: int, seed: int = 0, max_tail: int = 3, max_degree: int = 3, samples: int = 100) -> Report:
    H = HopfAlgebra(dim)
    rep = Report("hopf", dim, seed, max_tail)
    gens = H.generators(max_tail)
    rng = random.Random(seed)
    monos = random_pbw_monomials(H, rng, samples, max_degree, min(max_tail, 1))
    rep.run("coassociativity on generators", gens, H.check_coassoc)
    rep.run("counit on generators", gens, H.check_counit)
    rep.run("antipode on generators", gens, H.check_antipode)
    rep.run("coassociativity on random monomials", monos, H.check_coassoc)
    rep.run("counit on random monomials", monos, H.check_counit)
    rep.run("antipode on random monomials", monos, H.check_antipode)
    rep.run(
        "R term grading",
        [(A, t) for n in range(max_tail + 1) for t in H.tails(n) for A in H.root_labels()],
        lambda at: H.r_term(*at) is not None,
    )
    rep.run(
        "horizontal coproducts commute",
        [(l, m) for l in H.indices for m in H.indices if l < m],
        lambda lm: H.coproduct_gen(X(lm[0])).bracket(H.coproduct_gen(X(lm[1]))).is_zero(),
    )
    small = H.generators(min(max_tail, 1))
    rep.run(
        "Jacobi identity",
        [t for t in product(small, repeat=3) if t[0] <= t[1] <= t[2]],
        lambda t: _jacobi(H, t),
        lambda t: ", ".join(map(str, t)),
    )
    rep.run(
        "commutators respect the bracket",
        [(g, h) for g in small for h in small],
        lambda gh: commutator_table(gh[0], gh[1], dim) == H.gen(gh[0]).bracket(H.gen(gh[1])),
    )
    return rep


def suite_trees(dim: int, seed: int = 0, max_tail: int = 3) -> Report:
    from math import factorial

    H = HopfAlgebra(dim)
    rep = Report("trees", dim, seed, max_tail)
    A0 = H.root_labels()[0]
    rep.run(
        "tree count is |a|!",
        [t for n in range(max(max_tail, 4) + 1) for t in H.tails(n)][:200],
        lambda t: trees.tree_count(trees.tree_expand(A0, t)) == factorial(len(t)),
    )
    cases = [(A, t) for n in range(max_tail + 1) for t in H.tails(n) for A in H.root_labels()]
    rep.run("tree coproduct equals recursion", cases, lambda at: trees.agrees_with_recursion(at[0], at[1], H)[0])
    rep.run("tree antipode equals recursion", cases, lambda at: trees.agrees_with_recursion(at[0], at[1], H)[1])
    rep.run(
        "chain plus fork is symmetric in the tail",
        [(A, l, m) for A in H.root_labels() for l in H.indices for m in H.indices if l <= m],
        lambda alm: trees.check_rel(alm[0], alm[1], alm[2], dim),
    )
    return rep


def suite_oracle(dim: int, seed: int = 0, max_tail: int = 1, pairs: int = 50, cocycles: int = 20) -> Report:
    rep = Report("oracle", dim, seed, max_tail)
    H = HopfAlgebra(dim)
    samples = crossed.random_pairs(seed, dim, pairs)
    idx = range(1, dim + 1)
    rep.run(
        "Leibniz rule for X",
        samples,
        lambda ab: all(crossed.check_leibniz_X(i, *ab) for i in idx),
    )
    rep.run(
        "Leibniz rule for Y",
        samples,
        lambda ab: all(crossed.check_leibniz_Y(j, k, *ab) for j in idx for k in idx),
    )
    rep.run(
        "Leibniz rule for delta",
        samples,
        lambda ab: all(crossed.check_leibniz_delta(k, j, i, *ab) for (k, j, i) in H.root_labels()),
    )
    rng = random.Random(seed + 1)
    diffeos = [(crossed.random_diffeo(rng, dim), crossed.random_diffeo(rng, dim)) for _ in range(cocycles)]
    rep.run("gamma cocycle identity", diffeos, lambda pp: crossed.check_cocycle(*pp))
    gens = crossed.generator_suite(dim, max_tail)
    few = samples[:3]
    rep.run(
        "generalized Leibniz on generators",
        gens,
        lambda g: all(crossed.check_gendelta(H.gen(g), a, b, H) for a, b in few),
    )
    two = crossed.generator_suite(dim, 0)
    rep.run(
        "generalized Leibniz on products of two generators",
        [(g, h) for g in two for h in two],
        lambda gh: crossed.check_gendelta(H.word(*gh), *few[0], H),
    )
    rep.run(
        "quadratic delta relation",
        [(c, b, l, m) for c in idx for b in idx for l in idx for m in idx if l <= m],
        lambda t: all(crossed.check_delta_relation(*t, a) for a, _ in few),
    )
    rep.run(
        "delta action independent of tail order",
        [(A, (l, m)) for A in H.root_labels() for l in idx for m in idx if l <= m],
        lambda at: all(crossed.tail_permutation_agrees(*at[0], at[1], a) for a, _ in few[:2]),
    )
    return rep


def suite_geometry(dim: int, seed: int = 0, max_tail: int = 0, connections: int = 5, diffeos: int = 5) -> Report:
    rep = Report("geometry", dim, seed, max_tail)
    rng = random.Random(seed)
    gammas = [geometry.Connection.flat(dim)] + [
        geometry.random_connection(rng, dim, symmetric=bool(n % 2)) for n in range(connections)
    ]
    psis = [crossed.random_diffeo(rng, dim) for _ in range(diffeos)]
    cache: dict[int, list[geometry.IdentityCheck]] = {}

    def invariance(n: int, case: tuple[int, geometry.Connection, geometry.PolyDiffeo]) -> bool:
        key, gamma, psi = case
        if key not in cache:
            cache[key] = geometry.check_lift_invariance(gamma, psi)
        return cache[key][n].status

    cases = [(n, g, p) for n, (g, p) in enumerate(product(gammas, psis))]
    names = [c.identity for c in geometry.check_lift_invariance(gammas[0], psis[0])]
    for n, name in enumerate(names):
        rep.run(f"lift invariance: {name}", cases, lambda case, n=n: invariance(n, case))
    rep.run(
        "torsion vanishes iff connection symmetric",
        gammas,
        lambda g: geometry.torsion_vanishes(g) == g.is_symmetric(),
    )
    rep.run("structure equation for [X_i, X_j]", gammas, lambda g: geometry.check_structure_equation(g).status)
    return rep


def run_suite(name: str, dim: int, seed: int = 0, max_tail: int | None = None, max_degree: int = 3) -> list[Report]:
    """Run one suite or, with ``name == "all"``, every suite in a fixed order."""
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, dim, seed, max_tail, max_degree)]
    if name == "hopf":
        return [suite_hopf(dim, seed, 3 if max_tail is None else max_tail, max_degree)]
    if name == "trees":
        return [suite_trees(dim, seed, 3 if max_tail is None else max_tail)]
    if name == "oracle":
        return [suite_oracle(dim, seed, 1 if max_tail is None else max_tail)]
    if name == "geometry":
        return [suite_geometry(dim, seed)]
    raise ValueError(f"unknown suite {name!r}")
