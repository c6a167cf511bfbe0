"""Exact rational polyhedra: feasibility, vertices, volumes and cell splitting.

Feasibility of mixed strict/non-strict systems is decided by Fourier-Motzkin
elimination where a combined row is strict iff one of its parents was.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, factorial, floor
from typing import Iterable, Iterator, Sequence

from .linalg import determinant, rank, solve

RELATIONS = ("<=", "<", ">=", ">", "=")

# a normalized row: coeffs . x  (< if strict else <=)  bound
Row = tuple[tuple[Fraction, ...], Fraction, bool]


class InfeasibleError(ValueError):
    pass


class UnboundedError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    bound: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "bound", Fraction(self.bound))

    def holds(self, x: Sequence) -> bool:
        lhs = sum(c * xi for c, xi in zip(self.coeffs, x))
        return {
            "<=": lhs <= self.bound,
            "<": lhs < self.bound,
            ">=": lhs >= self.bound,
            ">": lhs > self.bound,
            "=": lhs == self.bound,
        }[self.relation]


@dataclass(frozen=True)
class LinearSystem:
    dim: int
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints
        )
        for c in cons:
            if len(c.coeffs) != self.dim:
                raise ValueError(
                    f"constraint has {len(c.coeffs)} coefficients, system dimension is {self.dim}"
                )
        object.__setattr__(self, "constraints", cons)

    def rows(self) -> list[Row]:
        out: list[Row] = []
        for c in self.constraints:
            a, b = c.coeffs, c.bound
            neg = tuple(-x for x in a)
            if c.relation in ("<=", "<"):
                out.append((a, b, c.relation == "<"))
            elif c.relation in (">=", ">"):
                out.append((neg, -b, c.relation == ">"))
            else:
                out.append((a, b, False))
                out.append((neg, -b, False))
        return out

    def satisfied_by(self, x: Sequence) -> bool:
        return all(c.holds(x) for c in self.constraints)


def _normalize(rows: Iterable[Row]) -> list[Row] | None:
    """Drop trivial rows, keep the tightest of parallel rows; None if a row is violated."""
    best: dict[tuple, tuple[Fraction, bool]] = {}
    for a, b, strict in rows:
        scale = next((abs(x) for x in a if x != 0), None)
        if scale is None:
            if b < 0 or (strict and b == 0):
                return None
            continue
        key = tuple(x / scale for x in a)
        nb = b / scale
        cur = best.get(key)
        if cur is None or nb < cur[0] or (nb == cur[0] and strict and not cur[1]):
            best[key] = (nb, strict)
    return [(k, b, s) for k, (b, s) in best.items()]


def _eliminate(rows: list[Row], k: int) -> list[Row] | None:
    pos, neg, rest = [], [], []
    for r in rows:
        c = r[0][k]
        (pos if c > 0 else neg if c < 0 else rest).append(r)
    out = list(rest)
    for ap, bp, sp in pos:
        cp = ap[k]
        for an, bn, sn in neg:
            cn = -an[k]
            a = tuple(x / cp + y / cn for x, y in zip(ap, an))
            out.append((a, bp / cp + bn / cn, sp or sn))
    return _normalize(out)


def _projection_chain(rows: list[Row], dim: int) -> list[list[Row]] | None:
    """chain[k] is the projection onto the first k variables (chain[dim] = input)."""
    cur = _normalize(rows)
    if cur is None:
        return None
    chain = [cur]
    for k in range(dim - 1, -1, -1):
        cur = _eliminate(cur, k)
        if cur is None:
            return None
        chain.append(cur)
    chain.reverse()
    return chain


def _bounds(rows: list[Row], prefix: Sequence, k: int):
    """Tightest lower/upper bound (value, strict) on x_k with x_0..x_{k-1} fixed."""
    lo = hi = None
    for a, b, strict in rows:
        c = a[k]
        rhs = b - sum(ai * xi for ai, xi in zip(a, prefix))
        if c > 0:
            v = rhs / c
            if hi is None or v < hi[0] or (v == hi[0] and strict):
                hi = (v, strict)
        elif c < 0:
            v = rhs / c
            if lo is None or v > lo[0] or (v == lo[0] and strict):
                lo = (v, strict)
    return lo, hi


def _pick(lo, hi) -> Fraction:
    if hi is not None and not hi[1] and (lo is None or hi[0] > lo[0] or not lo[1]):
        return hi[0]
    if lo is not None and not lo[1]:
        return lo[0]
    if lo is not None and hi is not None:
        return (lo[0] + hi[0]) / 2
    if hi is not None:
        return hi[0] - 1
    if lo is not None:
        return lo[0] + 1
    return Fraction(0)


def feasible(system: LinearSystem) -> tuple[Fraction, ...] | None:
    """A rational point satisfying every constraint, or None when infeasible."""
    d = system.dim
    chain = _projection_chain(system.rows(), d)
    if chain is None:
        return None
    x: list[Fraction] = []
    for k in range(d):
        lo, hi = _bounds(chain[k + 1], x, k)
        x.append(_pick(lo, hi))
    point = tuple(x)
    # the projection is exact, so back-substitution cannot fail
    assert system.satisfied_by(point), "Fourier-Motzkin back-substitution failed"
    return point


def lattice_points(rows: Sequence[tuple[Sequence, object]], dim: int) -> Iterator[tuple[int, ...]]:
    """All integer points of the bounded polyhedron {x : a.x <= b for (a, b) in rows}."""
    nrows = [(tuple(Fraction(x) for x in a), Fraction(b), False) for a, b in rows]
    chain = _projection_chain(nrows, dim)
    if chain is None:
        return

    def rec(prefix: list[int]):
        k = len(prefix)
        if k == dim:
            yield tuple(prefix)
            return
        lo, hi = _bounds(chain[k + 1], prefix, k)
        if lo is None or hi is None:
            raise UnboundedError("lattice point enumeration needs a bounded polyhedron")
        for v in range(ceil(lo[0]), floor(hi[0]) + 1):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def _affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[x - y for x, y in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True, eq=False)
class CellPiece:
    """Bounded full-dimensional polytope ``{x : a.x <= b}``."""

    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    dim: int = field(default=0)

    @classmethod
    def from_halfspaces(cls, halfspaces, dim=None) -> "CellPiece":
        hs = tuple(
            (tuple(Fraction(x) for x in a), Fraction(b)) for a, b in halfspaces
        )
        if dim is None:
            dim = len(hs[0][0])
        return cls(hs, dim)

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        hs = self.halfspaces
        found = set()
        for combo in itertools.combinations(range(len(hs)), self.dim):
            x = solve([hs[i][0] for i in combo], [hs[i][1] for i in combo])
            if x is None or x in found:
                continue
            if all(sum(a * xi for a, xi in zip(ai, x)) <= bi for ai, bi in hs):
                found.add(x)
        return tuple(sorted(found))

    @cached_property
    def interior_sample(self) -> tuple[Fraction, ...]:
        vs = self.vertices
        if not vs:
            raise InfeasibleError("empty cell")
        return tuple(sum(c) / len(vs) for c in zip(*vs))

    def is_bounded(self) -> bool:
        rows = [(a, b, False) for a, b in self.halfspaces]
        chain = _projection_chain(rows, self.dim)
        if chain is None:
            return True
        # bounded iff every coordinate is bounded on both sides along the chain
        for k in range(self.dim):
            coeffs = [a[k] for a, _, _ in chain[k + 1]]
            if not any(c > 0 for c in coeffs) or not any(c < 0 for c in coeffs):
                return False
        return True

    def has_interior(self) -> bool:
        strict = LinearSystem(
            self.dim, tuple(Constraint(a, "<", b) for a, b in self.halfspaces)
        )
        return feasible(strict) is not None

    def pruned(self) -> "CellPiece":
        """Same polytope with only facet-defining rows kept."""
        vs = self.vertices
        keep = []
        seen = set()
        for a, b in self.halfspaces:
            tight = [v for v in vs if sum(x * y for x, y in zip(a, v)) == b]
            key = frozenset(tight)
            if key in seen or _affine_dim(tight) != self.dim - 1:
                continue
            seen.add(key)
            keep.append((a, b))
        piece = CellPiece(tuple(keep), self.dim)
        piece.__dict__["vertices"] = vs
        return piece


def unit_cube(dim: int) -> CellPiece:
    hs = []
    for i in range(dim):
        e = tuple(Fraction(int(j == i)) for j in range(dim))
        hs.append((e, Fraction(1)))
        hs.append((tuple(-x for x in e), Fraction(0)))
    return CellPiece(tuple(hs), dim)


def split(cell: CellPiece, normal: Sequence, level) -> list[CellPiece]:
    """Full-dimensional pieces of ``cell`` on either side of ``normal.x = level``."""
    a = tuple(Fraction(x) for x in normal)
    lv = Fraction(level)
    side = [sum(x * y for x, y in zip(a, v)) - lv for v in cell.vertices]
    if all(s <= 0 for s in side) or all(s >= 0 for s in side):
        return [cell]
    pieces = []
    for hs in ((a, lv), (tuple(-x for x in a), -lv)):
        piece = CellPiece(cell.halfspaces + (hs,), cell.dim)
        if piece.has_interior():
            pieces.append(piece.pruned())
    return pieces


def _flag_simplices(cell: CellPiece, face: frozenset, fdim: int, memo: dict) -> list[list]:
    if fdim == 0:
        return [[next(iter(face))]]
    if face in memo:
        return memo[face]
    pts = list(face)
    center = tuple(sum(c) / len(pts) for c in zip(*pts))
    subfaces = set()
    for a, b in cell.halfspaces:
        tight = frozenset(v for v in face if sum(x * y for x, y in zip(a, v)) == b)
        if tight and tight != face and _affine_dim(list(tight)) == fdim - 1:
            subfaces.add(tight)
    out = []
    for sub in subfaces:
        for simplex in _flag_simplices(cell, sub, fdim - 1, memo):
            out.append([center] + simplex)
    memo[face] = out
    return out


def volume(cell: CellPiece) -> Fraction:
    """Exact volume via the barycentric flag triangulation of the vertex set."""
    if not cell.is_bounded():
        raise UnboundedError("volume of an unbounded polyhedron")
    vs = cell.vertices
    d = cell.dim
    if _affine_dim(list(vs)) < d:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _flag_simplices(cell, frozenset(vs), d, {}):
        base = simplex[0]
        mat = [[x - y for x, y in zip(p, base)] for p in simplex[1:]]
        total += abs(Fraction(determinant(mat)))
    return total / factorial(d)
