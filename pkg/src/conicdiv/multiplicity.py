"""Multiplicities of conic classes in R^(1/n) and the Hilbert-Kunz function.

R^(1/n) splits into the summands I_c, c in (1/n)Z^d / Z^d, and I_c is isomorphic
to C(-c). Running c over the grid points k/n of [0,1)^d, the bijection c -> -c
turns the count of summands of class gamma into the number of k whose
ceil(sigma(k/n)) has class gamma. The Hilbert-Kunz function is then
sum_gamma mu(C_gamma) v_gamma(n); all of this is characteristic free, so it is
exposed for every n >= 1 even though the Frobenius only realises n = p^e.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .conic import ConicTable
from .cone import Cone
from .divisors import ClassGroup, ClassLabel
from .linalg import determinant, solve


class QuasiPolynomialFitError(ValueError):
    pass


class EnumerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class MultiplicityVector:
    n: int
    counts: dict[ClassLabel, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class QuasiPolynomial:
    degree: int
    period: int
    coefficients: tuple[tuple[Fraction, ...], ...]  # per residue n mod period, low degree first

    def __call__(self, n: int) -> Fraction:
        coeffs = self.coefficients[n % self.period]
        return sum((c * n**k for k, c in enumerate(coeffs)), Fraction(0))

    @property
    def leading(self) -> Fraction:
        return self.coefficients[0][self.degree]

    def coefficient(self, k: int) -> tuple[Fraction, ...]:
        return tuple(c[k] for c in self.coefficients)

    @property
    def is_polynomial(self) -> bool:
        return self.period == 1


@dataclass(frozen=True)
class GeneratorSet:
    u: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def mu(self) -> int:
        return len(self.generators)


def multiplicity_vector(
    cone: Cone, group: ClassGroup, table: ConicTable | None, n: int
) -> MultiplicityVector:
    if n < 1:
        raise ValueError("n must be positive")
    counts: Counter = Counter()
    forms = cone.forms
    for k in itertools.product(range(n), repeat=cone.dim):
        u = tuple(-(-sum(a * b for a, b in zip(f, k)) // n) for f in forms)
        counts[group.class_of(u)] += 1
    if table is not None:
        known = set(table.labels)
        stray = [lab for lab in counts if lab not in known]
        if stray:
            raise AssertionError(f"multiplicity keys outside the conic table: {stray}")
    return MultiplicityVector(n, dict(sorted(counts.items())))


def _interpolate(ns: Sequence[int], vs: Sequence, degree: int) -> tuple[Fraction, ...]:
    mat = [[Fraction(n) ** k for k in range(degree + 1)] for n in ns]
    return solve(mat, vs)


def fit_quasi_polynomial(
    values: Sequence[int],
    degree: int,
    max_period: int,
    leading: Fraction | None = None,
    check_coefficients: bool = True,
) -> QuasiPolynomial:
    """Smallest-period quasi-polynomial through v(1), ..., v(N) (``values[i] = v(i+1)``).

    Each residue class is interpolated through its first degree+1 samples and must
    reproduce all later ones. With ``check_coefficients`` the top two coefficients
    must agree across residues, and the top one must equal ``leading`` if given.
    """
    N = len(values)
    if N < 2 * max_period * (degree + 1):
        raise ValueError(
            f"need at least {2 * max_period * (degree + 1)} samples, got {N}"
        )
    for period in range(1, max_period + 1):
        coeffs = []
        for r in range(period):
            ns = [n for n in range(1, N + 1) if n % period == r]
            c = _interpolate(ns[: degree + 1], [values[n - 1] for n in ns[: degree + 1]], degree)
            if any(
                sum(ck * n**k for k, ck in enumerate(c)) != values[n - 1]
                for n in ns[degree + 1:]
            ):
                break
            coeffs.append(c)
        else:
            q = QuasiPolynomial(degree, period, tuple(coeffs))
            if check_coefficients:
                _check_coefficients(q, leading)
            return q
    raise QuasiPolynomialFitError(f"no quasi-polynomial of period <= {max_period} fits")


def _check_coefficients(q: QuasiPolynomial, leading: Fraction | None) -> None:
    top = set(q.coefficient(q.degree))
    if len(top) != 1:
        raise QuasiPolynomialFitError(f"leading coefficient varies with the residue: {top}")
    if leading is not None and top != {Fraction(leading)}:
        raise QuasiPolynomialFitError(f"leading coefficient {top.pop()} != expected {leading}")
    if q.degree >= 1 and len(set(q.coefficient(q.degree - 1))) != 1:
        raise QuasiPolynomialFitError("degree d-1 coefficient varies with the residue")


def multiplicity_series(
    cone: Cone, group: ClassGroup, table: ConicTable, nmax: int
) -> dict[ClassLabel, list[int]]:
    series = {lab: [] for lab in table.labels}
    for n in range(1, nmax + 1):
        mv = multiplicity_vector(cone, group, table, n)
        for lab in series:
            series[lab].append(mv.counts.get(lab, 0))
    return series


def fit_multiplicities(
    cone: Cone, group: ClassGroup, table: ConicTable, nmax: int, max_period: int | None = None
) -> dict[ClassLabel, QuasiPolynomial]:
    """v_gamma as quasi-polynomials; leading coefficient is checked against vol(gamma)."""
    if max_period is None:
        max_period = table.vertex_denominator_lcm()
    series = multiplicity_series(cone, group, table, nmax)
    return {
        lab: fit_quasi_polynomial(series[lab], cone.dim, max_period, leading=table.row(lab).volume)
        for lab in table.labels
    }


def min_generators(cone: Cone, u: Sequence[int], max_rounds: int = 12) -> GeneratorSet:
    """Minimal monomial generators of D(u).

    Points with u <= sigma(z) <= u + B form a set closed under going down in the
    sigma order inside D(u), so minimality there is exact. B doubles until the
    minimal set is stable and none of its elements sits on the outer shell.
    """
    u = tuple(int(x) for x in u)
    if len(u) != cone.s:
        raise ValueError(f"class vector has length {len(u)}, expected {cone.s}")
    prev = None
    B = 1
    for _ in range(max_rounds):
        pts = cone.points_with_sigma_between(u, tuple(x + B for x in u))
        vals = {p: cone.sigma(p) for p in pts}
        minimal = []
        on_shell = False
        for p in pts:
            vp = vals[p]
            if any(q != p and all(a <= b for a, b in zip(vals[q], vp)) for q in pts):
                continue
            minimal.append(p)
            if max(a - b for a, b in zip(vp, u)) == B:
                on_shell = True
        gens = tuple(sorted(minimal))
        if gens == prev and not on_shell:
            return GeneratorSet(u, gens)
        prev = gens
        B *= 2
    raise EnumerationError(f"generator search for u={u} did not stabilise")


def class_mu(cone: Cone, table: ConicTable) -> dict[ClassLabel, int]:
    return {r.label: min_generators(cone, r.representative).mu for r in table}


def hk_function(
    cone: Cone, group: ClassGroup, table: ConicTable, n: int, mu: dict | None = None
) -> int:
    mu = class_mu(cone, table) if mu is None else mu
    mv = multiplicity_vector(cone, group, table, n)
    return sum(mu[lab] * c for lab, c in mv.counts.items())


def hk_multiplicity(cone: Cone, group: ClassGroup, table: ConicTable, mu: dict | None = None) -> Fraction:
    mu = class_mu(cone, table) if mu is None else mu
    return sum((mu[r.label] * r.volume for r in table), Fraction(0))


def hk_quasi_polynomial(
    cone: Cone, group: ClassGroup, table: ConicTable, nmax: int, max_period: int | None = None
) -> QuasiPolynomial:
    mu = class_mu(cone, table)
    if max_period is None:
        max_period = table.vertex_denominator_lcm()
    values = [hk_function(cone, group, table, n, mu) for n in range(1, nmax + 1)]
    return fit_quasi_polynomial(
        values, cone.dim, max_period, leading=hk_multiplicity(cone, group, table, mu)
    )


def frobenius_colength_oracle(cone: Cone, n: int, max_points: int = 2_000_000) -> int:
    """#(M minus the union of n*g + M over the Hilbert basis), counted directly.

    The complement is finite and closed under going down in M, and every element
    of it is reached from 0 by adding Hilbert basis elements without leaving it,
    so a breadth-first search enumerates it exactly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    hb = cone.hilbert_basis
    bounds = [tuple(n * v for v in cone.sigma(g)) for g in hb]

    def outside(z):
        sz = cone.sigma(z)
        return not any(all(a >= b for a, b in zip(sz, bd)) for bd in bounds)

    start = (0,) * cone.dim
    seen = {start}
    queue = deque([start])
    while queue:
        z = queue.popleft()
        for g in hb:
            w = tuple(a + b for a, b in zip(z, g))
            if w not in seen and outside(w):
                seen.add(w)
                if len(seen) > max_points:
                    raise EnumerationError("colength enumeration exceeded max_points")
                queue.append(w)
    return len(seen)


def is_totally_unimodular(cone: Cone) -> bool:
    """Every d x d minor of the form matrix lies in {-1, 0, 1}."""
    return all(
        determinant(rows) in (-1, 0, 1)
        for rows in itertools.combinations(cone.forms, cone.dim)
    )
