"""Conic divisor classes: the cells of the torus R^d/Z^d cut out by sigma_i = integer.

A class D(u) is conic iff some real x has u_i - 1 < sigma_i(x) <= u_i for all i.
Full enumeration splits the unit cube [0,1]^d by every hyperplane sigma_i = l
meeting its interior and labels each piece by the class of ceil(sigma(p)).
Pieces of one torus cell that the cube boundary cuts apart get the same label,
so grouping by label recovers the cells.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .cone import Cone, ceil_sigma
from .divisors import ClassGroup, ClassLabel, canonical_class
from .linalg import nullspace, rank
from .polyhedra import CellPiece, Constraint, LinearSystem, feasible, split, unit_cube, volume

MAX_ENUMERATION_DIM = 5


class ContractViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class ConicClass:
    label: ClassLabel
    representative: tuple[int, ...]
    pieces: tuple[CellPiece, ...]
    volume: Fraction


@dataclass(frozen=True)
class ConicTable:
    rows: tuple[ConicClass, ...]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def labels(self) -> tuple[ClassLabel, ...]:
        return tuple(r.label for r in self.rows)

    def row(self, label: ClassLabel) -> ConicClass:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def total_volume(self) -> Fraction:
        return sum((r.volume for r in self.rows), Fraction(0))

    def vertex_denominator_lcm(self) -> int:
        """lcm of all vertex coordinate denominators; a period of every Ehrhart count."""
        out = 1
        for r in self.rows:
            for p in r.pieces:
                for v in p.vertices:
                    for x in v:
                        out = lcm(out, x.denominator)
        return out


def conic_system(cone: Cone, u: Sequence[int]) -> LinearSystem:
    cons = []
    for f, ui in zip(cone.forms, u):
        cons.append(Constraint(f, "<=", ui))
        cons.append(Constraint(f, ">", ui - 1))
    return LinearSystem(cone.dim, tuple(cons))


def conic_witness(cone: Cone, u: Sequence[int]) -> tuple[Fraction, ...] | None:
    """x with ceil(sigma(x)) = u, i.e. D(u) = C(x); None if D(u) is not conic."""
    if len(u) != cone.s:
        raise ValueError(f"class vector has length {len(u)}, expected {cone.s}")
    return feasible(conic_system(cone, [int(x) for x in u]))


def is_conic(cone: Cone, group: ClassGroup | None, u: Sequence[int]) -> bool:
    return conic_witness(cone, u) is not None


def enumerate_conic_classes(
    cone: Cone, group: ClassGroup, max_dim: int = MAX_ENUMERATION_DIM
) -> ConicTable:
    d = cone.dim
    if d > max_dim:
        raise ValueError(
            f"full cell enumeration is exponential in d; d={d} exceeds max_dim={max_dim}"
        )
    pieces = [unit_cube(d)]
    for f in cone.forms:
        lo = sum(c for c in f if c < 0)
        hi = sum(c for c in f if c > 0)
        for level in range(lo + 1, hi):
            pieces = [q for p in pieces for q in split(p, f, level)]
    groups: dict[ClassLabel, list] = defaultdict(list)
    for p in pieces:
        u = ceil_sigma(cone, p.interior_sample).ceiling
        groups[group.class_of(u)].append((u, p))
    rows = []
    for label in sorted(groups):
        members = groups[label]
        vol = sum((volume(p) for _, p in members), Fraction(0))
        rows.append(ConicClass(label, members[0][0], tuple(p for _, p in members), vol))
    return ConicTable(tuple(rows))


def labels_in_window(group: ClassGroup, radius: int) -> list[ClassLabel]:
    """Every class whose free coordinates lie in [-radius, radius]^m."""
    out = []
    tors_ranges = [range(e) for e in group.invariant_factors]
    for free in itertools.product(range(-radius, radius + 1), repeat=group.free_rank):
        for tors in itertools.product(*tors_ranges):
            out.append(ClassLabel(tuple(tors), tuple(free)))
    return out


def conic_labels_in_window(cone: Cone, group: ClassGroup, radius: int) -> list[ClassLabel]:
    return [
        lab for lab in labels_in_window(group, radius)
        if is_conic(cone, group, group.representative(lab))
    ]


@dataclass(frozen=True)
class ConicPolytope:
    """Convex hull of the free parts of the conic classes (in Cl(R)/T tensor R)."""

    dimension: int
    vertices: tuple[tuple[Fraction, ...], ...]
    center: tuple[Fraction, ...]
    facets: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    points: tuple[tuple[int, ...], ...]

    def contains(self, p: Sequence) -> bool:
        return all(sum(a * x for a, x in zip(n, p)) <= b for n, b in self.facets)

    def is_centrally_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(tuple(2 * c - x for c, x in zip(self.center, v)) in vs for v in vs)


def _hull(points: list[tuple[Fraction, ...]], m: int):
    """Facets (n, b) with n.x <= b, and vertices, of a full-dimensional point set."""
    facets = set()
    for combo in itertools.combinations(points, m):
        p0 = combo[0]
        diffs = [[x - y for x, y in zip(p, p0)] for p in combo[1:]]
        if diffs and rank(diffs) != m - 1:
            continue
        ker = nullspace(diffs, m) if diffs else [(Fraction(1),)]
        if len(ker) != 1:
            continue
        n = ker[0]
        b = sum(a * x for a, x in zip(n, p0))
        vals = [sum(a * x for a, x in zip(n, p)) for p in points]
        if all(v <= b for v in vals):
            facets.add((n, b))
        elif all(v >= b for v in vals):
            facets.add((tuple(-a for a in n), -b))
    facets = list(facets)
    vertices = []
    for p in points:
        tight = [n for n, b in facets if sum(a * x for a, x in zip(n, p)) == b]
        if tight and rank(tight) == m:
            vertices.append(p)
    return facets, sorted(set(vertices))


def conic_polytope(labels: Iterable[ClassLabel], group: ClassGroup) -> ConicPolytope:
    """Hull of the free parts of ``labels``; checks dimension m and symmetry about [omega]/2."""
    m = group.free_rank
    pts = sorted({tuple(lab.free) for lab in labels})
    omega = canonical_class(group)
    center = tuple(Fraction(x, 2) for x in omega.free)
    if m == 0:
        return ConicPolytope(0, ((),), (), (), tuple(pts))
    fpts = [tuple(Fraction(x) for x in p) for p in pts]
    if len(fpts) < 2 or rank([[x - y for x, y in zip(p, fpts[0])] for p in fpts[1:]]) != m:
        raise ContractViolation(f"conic polytope is not of dimension m={m}")
    facets, vertices = _hull(fpts, m)
    poly = ConicPolytope(m, tuple(vertices), center, tuple(facets), tuple(pts))
    if not poly.is_centrally_symmetric():
        raise ContractViolation("conic polytope is not centrally symmetric about [omega]/2")
    return poly


def conic_polytope_from_table(table: ConicTable, group: ClassGroup) -> ConicPolytope:
    return conic_polytope(table.labels, group)


def check_polytope_membership(
    poly: ConicPolytope, cone: Cone, group: ClassGroup, radius: int
) -> None:
    """A class is conic iff its free part lies in the polytope (all torsion lifts agree)."""
    for lab in labels_in_window(group, radius):
        inside = poly.contains(lab.free) if poly.dimension else True
        if is_conic(cone, group, group.representative(lab)) != inside:
            raise ContractViolation(f"membership of {lab} disagrees with conic-ness")
