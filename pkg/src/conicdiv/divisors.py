"""Divisorial ideals D(u) and the divisor class group Cl(R) = Z^s / sigma(Z^d)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, prod
from typing import Sequence

from .cone import Cone
from .linalg import IntMatrix, matvec, smith_normal_form, solve


@dataclass(frozen=True, order=True)
class ClassLabel:
    torsion: tuple[int, ...]
    free: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"torsion": list(self.torsion), "free": list(self.free)}


@dataclass(frozen=True)
class DivisorialIdeal:
    """Monomial ideal spanned by {x in Z^d : sigma(x) >= u}."""

    u: tuple[int, ...]

    @classmethod
    def from_bounds(cls, u: Sequence) -> "DivisorialIdeal":
        return cls(tuple(ceil(Fraction(x)) for x in u))


@dataclass(frozen=True)
class ClassGroup:
    """Z^s / sigma(Z^d) presented through the Smith form U . sigma . V = D.

    For w = U u the first d coordinates live in Z/e_i and the last s - d are free.
    """

    s: int
    d: int
    diagonal: tuple[int, ...]
    U: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(e for e in self.diagonal if e > 1)

    @property
    def free_rank(self) -> int:
        return self.s - self.d

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def zero(self) -> ClassLabel:
        return ClassLabel((0,) * len(self.invariant_factors), (0,) * self.free_rank)

    def class_of(self, u: Sequence[int]) -> ClassLabel:
        if len(u) != self.s:
            raise ValueError(f"class vector has length {len(u)}, expected {self.s}")
        w = matvec(self.U, u)
        tors = tuple(w[i] % e for i, e in enumerate(self.diagonal) if e > 1)
        return ClassLabel(tors, tuple(w[self.d:]))

    def add(self, a: ClassLabel, b: ClassLabel) -> ClassLabel:
        tors = tuple((x + y) % e for x, y, e in zip(a.torsion, b.torsion, self.invariant_factors))
        return ClassLabel(tors, tuple(x + y for x, y in zip(a.free, b.free)))

    def negate(self, a: ClassLabel) -> ClassLabel:
        tors = tuple((-x) % e for x, e in zip(a.torsion, self.invariant_factors))
        return ClassLabel(tors, tuple(-x for x in a.free))

    def representative(self, label: ClassLabel) -> tuple[int, ...]:
        """Some u in Z^s with class_of(u) == label."""
        w = []
        t = iter(label.torsion)
        for e in self.diagonal:
            w.append(next(t) if e > 1 else 0)
        w.extend(label.free)
        u = solve(self.U, w)
        return tuple(int(x) for x in u)

    def is_torsion(self, label: ClassLabel) -> bool:
        return not any(label.free)


def class_group(cone: Cone) -> ClassGroup:
    snf = smith_normal_form(cone.forms)
    diag = snf.diagonal
    if any(e == 0 for e in diag):
        raise ValueError("support forms have rank < d")
    return ClassGroup(cone.s, cone.dim, diag, snf.U)


def class_of(group: ClassGroup, u: Sequence[int]) -> ClassLabel:
    return group.class_of(u)


def is_torsion(group: ClassGroup, label: ClassLabel) -> bool:
    return group.is_torsion(label)


def canonical_class(group: ClassGroup, cone: Cone | None = None) -> ClassLabel:
    """Class of the canonical module, the ideal of interior monomials D(1, ..., 1)."""
    return group.class_of((1,) * group.s)
