"""Cohen-Macaulayness and depth of divisor classes over Segre products.

A factor is described by its dimension d_i, the lowest degree b of the module and
the highest degree h of its top local cohomology. For a shifted polynomial ring
R_i(-s) one has b = s, h = s - d_i. For the Veronese module
sum_k R_{ck + a} over R^(c) the same quantities are b = ceil(-a/c) and
h = floor((-d_i - a)/c), read off from the degrees k with ck + a >= 0 and with
ck + a <= -d_i (where H^{d_i}(R) lives).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GradedFactor:
    dim: int
    b: int
    h: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"factor dimension must be >= 2, got {self.dim}")
        if not self.h < self.b:
            raise ValueError("h < b must hold for a maximal Cohen-Macaulay factor")

    @classmethod
    def polynomial_shift(cls, dim: int, shift: int) -> "GradedFactor":
        return cls(dim, shift, shift - dim)

    @classmethod
    def veronese_shift(cls, dim: int, step: int, residue: int) -> "GradedFactor":
        if step < 1:
            raise ValueError("Veronese step must be positive")
        # ceil(-a/c) and floor((-d - a)/c) in integer arithmetic
        return cls(dim, -(residue // step), (-dim - residue) // step)


def _check(factors: Sequence[GradedFactor]) -> list[GradedFactor]:
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    return factors


def _proper_subsets(n: int) -> Iterable[tuple[int, ...]]:
    for k in range(1, n):
        yield from itertools.combinations(range(n), k)


def _contributes(factors: Sequence[GradedFactor], subset: Sequence[int]) -> bool:
    rest = [j for j in range(len(factors)) if j not in subset]
    if not rest:
        return True
    return min(factors[i].h for i in subset) >= max(factors[j].b for j in rest)


def is_cm(factors: Sequence[GradedFactor]) -> bool:
    """For every nonempty proper I: min_{i in I} h_i < max_{j not in I} b_j."""
    factors = _check(factors)
    return not any(_contributes(factors, I) for I in _proper_subsets(len(factors)))


def depth(factors: Sequence[GradedFactor]) -> int:
    """Least local cohomology index sum_{i in I} d_i - (|I| - 1) over contributing I."""
    factors = _check(factors)
    n = len(factors)
    best = sum(f.dim for f in factors) - (n - 1)
    for I in _proper_subsets(n):
        if _contributes(factors, I):
            best = min(best, sum(factors[i].dim for i in I) - (len(I) - 1))
    return best


def dimension(factors: Sequence[GradedFactor]) -> int:
    return sum(f.dim for f in factors) - (len(factors) - 1)


class NotCohenMacaulayError(ValueError):
    pass


def cm_permutation(factors: Sequence[GradedFactor]) -> tuple[int, ...]:
    """1-based order j_1..j_n whose every prefix Segre product is Cohen-Macaulay.

    Sort by b, then cut 2..n into blocks: a block started after position u runs
    while h >= b(M_u) and ends at the first factor with h < b(M_u); each block is
    rotated so that this last factor comes first.
    """
    factors = _check(factors)
    if not is_cm(factors):
        raise NotCohenMacaulayError("the Segre product is not Cohen-Macaulay")
    order = sorted(range(len(factors)), key=lambda i: (factors[i].b, i))
    result = [order[0]]
    u = 0  # position in ``order`` of the factor closing the previous block
    pos = 1
    while pos < len(order):
        block = []
        while True:
            if pos >= len(order):
                raise NotCohenMacaulayError("block decomposition failed")
            block.append(order[pos])
            closes = factors[order[pos]].h < factors[order[u]].b
            pos += 1
            if closes:
                break
        result.append(block[-1])
        result.extend(block[:-1])
        u = pos - 1
    perm = tuple(i + 1 for i in result)
    for t in range(1, len(perm) + 1):
        # prefixes of length 1 are trivially CM
        if not is_cm([factors[j - 1] for j in perm[:t]]):
            raise AssertionError(f"prefix {perm[:t]} is not Cohen-Macaulay")
    return perm


def class_factors(dims: Sequence[int], shifts: Sequence[int]) -> list[GradedFactor]:
    if len(dims) != len(shifts):
        raise ValueError("dims and shifts must have the same length")
    return [GradedFactor.polynomial_shift(d, s) for d, s in zip(dims, shifts)]


def cm_region(dims: Sequence[int], window: tuple[int, int]) -> dict[tuple[int, ...], int]:
    """CM difference vectors (s_2-s_1, ..., s_n-s_1) in the box window, with their depth.

    Every class in the window is evaluated; the returned mapping only holds the CM
    ones. Use :func:`depth_map` for the depths of all classes.
    """
    full = sum(dims) - (len(dims) - 1)
    return {p: dep for p, dep in depth_map(dims, window).items() if dep == full}


def depth_map(dims: Sequence[int], window: tuple[int, int]) -> dict[tuple[int, ...], int]:
    dims = list(dims)
    if len(dims) < 2:
        raise ValueError("need at least two factors")
    lo, hi = window
    out = {}
    for diff in itertools.product(range(lo, hi + 1), repeat=len(dims) - 1):
        out[diff] = depth(class_factors(dims, (0,) + diff))
    return out


def sorted_gap_cm(d: int, shifts: Sequence[int]) -> bool:
    """Equal dimensions d: CM iff consecutive sorted shifts differ by less than d."""
    s = sorted(shifts)
    return all(b - a < d for a, b in zip(s, s[1:]))


def veronese_segre_cm_set(
    dims: tuple[int, int], steps: tuple[int, int], window: tuple[int, int]
) -> set[int]:
    """CM classes m in Cl(R^(c) # S^(d)) = Z inside the window.

    The module pair (sum_k R_{ck+a}, sum_k S_{dk+b}) has class m = a*d - b*c; it
    depends only on (a, b) modulo (c, d), so a is taken in [0, c).
    """
    dR, dS = dims
    c, d = steps
    if gcd(c, d) != 1:
        raise ValueError("class group is Z only for coprime Veronese steps")
    lo, hi = window
    out = set()
    for m in range(lo, hi + 1):
        for a in range(c):
            if (a * d - m) % c == 0:
                b = (a * d - m) // c
                pair = [GradedFactor.veronese_shift(dR, c, a), GradedFactor.veronese_shift(dS, d, b)]
                if is_cm(pair):
                    out.add(m)
                break
    return out
