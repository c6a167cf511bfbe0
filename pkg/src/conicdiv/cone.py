"""Positive normal affine monoids given by lattice generators or support forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil
from typing import Iterable, Sequence

from .linalg import dot, nullspace, primitive_part, rank, solve
from .polyhedra import lattice_points


class ConeError(ValueError):
    pass


class NotFullDimensionalError(ConeError):
    pass


class NotPointedError(ConeError):
    pass


@dataclass(frozen=True)
class SigmaValue:
    value: tuple[Fraction, ...]
    ceiling: tuple[int, ...]


def dual_extreme_rays(rows: Sequence[Sequence[int]], d: int) -> set[tuple[int, ...]]:
    """Primitive extreme rays of {y : a.y >= 0 for a in rows} by double description.

    ``rows`` must have rank d. Applied to generators this yields the facet forms,
    applied to forms it yields the extreme rays.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
        if len(basis) == d:
            break
    if len(basis) < d:
        raise ValueError("rows do not have full rank")
    B = [rows[i] for i in basis]
    rays: list[tuple[tuple[int, ...], frozenset]] = []
    for j in range(d):
        col = solve(B, [int(i == j) for i in range(d)])
        r = primitive_part(col)
        rays.append((r, frozenset(basis[i] for i in range(d) if i != j)))
    for k, a in enumerate(rows):
        if k in basis:
            continue
        vals = [dot(a, r) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new = [(r, z | {k}) if v == 0 else (r, z) for (r, z), v in zip(rays, vals) if v >= 0]
        for ip in pos:
            rp, zp = rays[ip]
            for ineg in neg:
                rn, zn = rays[ineg]
                common = zp & zn
                if len(common) < d - 2:
                    continue
                if any(
                    i not in (ip, ineg) and common <= z for i, (_, z) in enumerate(rays)
                ):
                    continue
                vp, vn = vals[ip], vals[ineg]
                comb = tuple(vp * x - vn * y for x, y in zip(rn, rp))
                new.append((primitive_part(comb), common | {k}))
        rays = new
    return {r for r, _ in rays}


def _facet_normals_bruteforce(vectors: Sequence[Sequence[int]], d: int) -> set[tuple[int, ...]]:
    """Primitive normals of hyperplanes spanned by (d-1)-subsets that support ``vectors``."""
    found = set()
    for combo in itertools.combinations(vectors, d - 1):
        if rank(combo) != d - 1:
            continue
        (ker,) = nullspace(combo, d)
        n = primitive_part(ker)
        vals = [dot(n, v) for v in vectors]
        if all(x >= 0 for x in vals):
            found.add(n)
        elif all(x <= 0 for x in vals):
            found.add(tuple(-x for x in n))
    return found


def support_forms(generators: Iterable[Sequence[int]], d: int) -> "Cone":
    """Cone spanned by ``generators`` in Z^d, with its irredundant primitive facet forms."""
    gens = tuple(tuple(int(x) for x in g) for g in generators)
    if any(len(g) != d for g in gens):
        raise ValueError(f"generators must have length {d}")
    if rank(gens) != d:
        raise NotFullDimensionalError("generators do not span a full-dimensional cone")
    forms = dual_extreme_rays(gens, d)
    if not forms or rank(forms) != d:
        raise NotPointedError("cone is not pointed: 0 is not the only unit of the monoid")
    return Cone(d, gens, tuple(sorted(forms)))


def from_support_forms(forms: Iterable[Sequence[int]], d: int) -> "Cone":
    """Cone {x : sigma(x) >= 0}; generators are its primitive extreme rays."""
    forms = tuple(tuple(int(x) for x in f) for f in forms)
    if any(len(f) != d for f in forms):
        raise ValueError(f"support forms must have length {d}")
    if not forms or rank(forms) != d:
        raise NotPointedError("support forms have rank < d, the cone contains a line")
    rays = dual_extreme_rays(forms, d)
    if not rays or rank(rays) != d:
        raise NotFullDimensionalError("support forms do not define a full-dimensional cone")
    # recompute forms from the rays to drop redundant or non-primitive input
    return support_forms(sorted(rays), d)


@dataclass(frozen=True)
class Cone:
    """R_+M together with its support forms; M = Z^d cap R_+M."""

    dim: int
    generators: tuple[tuple[int, ...], ...]
    forms: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def s(self) -> int:
        return len(self.forms)

    def sigma(self, x: Sequence) -> tuple:
        return tuple(dot(f, x) for f in self.forms)

    def contains(self, x: Sequence) -> bool:
        return all(v >= 0 for v in self.sigma(x))

    @cached_property
    def extreme_rays(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(dual_extreme_rays(self.forms, self.dim)))

    @cached_property
    def hilbert_basis(self) -> tuple[tuple[int, ...], ...]:
        return hilbert_basis(self)

    def points_with_sigma_between(self, lower: Sequence, upper: Sequence) -> list[tuple[int, ...]]:
        """Lattice points x with lower <= sigma(x) <= upper componentwise."""
        rows = []
        for f, lo, hi in zip(self.forms, lower, upper):
            rows.append((f, hi))
            rows.append((tuple(-c for c in f), -lo))
        return list(lattice_points(rows, self.dim))


def is_positive(cone: Cone) -> bool:
    return bool(cone.forms) and rank(cone.forms) == cone.dim


def ceil_sigma(cone: Cone, x: Sequence) -> SigmaValue:
    value = tuple(Fraction(v) for v in cone.sigma([Fraction(c) for c in x]))
    return SigmaValue(value, tuple(ceil(v) for v in value))


def hilbert_basis(cone: Cone) -> tuple[tuple[int, ...], ...]:
    """Irreducible elements of M, by enumeration of {0 <= sigma <= B} with B doubling.

    The set of points with sigma <= B is closed under taking monoid summands, so
    irreducibility inside the box is exact. Enumeration stops once the basis is
    stable over one doubling and every point of the outer shell is reducible, or
    once B passes the a-priori bound d * max sigma over the extreme rays.
    """
    d, s = cone.dim, cone.s
    cap = d * max(max(cone.sigma(r)) for r in cone.extreme_rays)
    zero = (0,) * d
    prev = None
    B = 1
    while True:
        pts = [p for p in cone.points_with_sigma_between((0,) * s, (B,) * s) if p != zero]
        vals = {p: cone.sigma(p) for p in pts}
        irreducible = []
        shell_ok = True
        for p in pts:
            vp = vals[p]
            reducible = any(
                q != p and all(a <= b for a, b in zip(vals[q], vp)) for q in pts
            )
            if not reducible:
                irreducible.append(p)
                if max(vp) == B:
                    shell_ok = False
        basis = tuple(sorted(irreducible))
        if B >= cap or (basis == prev and shell_ok):
            return basis
        prev = basis
        B *= 2
