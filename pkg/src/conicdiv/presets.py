"""Named example monoids.

``segre:d1,...,dk`` is the Segre product of k polynomial rings. Its monoid lives in
the equal-total-degree sublattice of Z^(d1+...+dk); we use the coordinates
(first d_i - 1 exponents of every factor, common degree t), which form a basis of
that sublattice, so the support forms are the d1+...+dk exponent functionals.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .cone import Cone, support_forms


def orthant(d: int) -> Cone:
    gens = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return _named(support_forms(gens, d), f"orthant:{d}")


def figure1() -> Cone:
    return _named(support_forms([(1, 0), (1, 3)], 2), "figure1")


def _compositions(total: int, parts: int):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def segre_exponent_forms(dims: Sequence[int]) -> list[tuple[int, ...]]:
    """The exponent functionals in embedding order: factor by factor, last one is t - sum."""
    rank = sum(dims) - len(dims) + 1
    forms = []
    pos = 0
    for di in dims:
        block = []
        for j in range(di - 1):
            f = [0] * rank
            f[pos + j] = 1
            block.append(tuple(f))
        last = [0] * rank
        for j in range(di - 1):
            last[pos + j] = -1
        last[-1] = 1
        block.append(tuple(last))
        forms.extend(block)
        pos += di - 1
    return forms


def segre(dims: Sequence[int]) -> Cone:
    dims = [int(x) for x in dims]
    if not dims or any(x < 1 for x in dims):
        raise ValueError("segre dimensions must be positive")
    rank = sum(dims) - len(dims) + 1
    gens = []
    for choice in itertools.product(*[range(di) for di in dims]):
        g = [0] * rank
        pos = 0
        for di, c in zip(dims, choice):
            if c < di - 1:
                g[pos + c] = 1
            pos += di - 1
        g[-1] = 1
        gens.append(tuple(g))
    return _named(support_forms(gens, rank), "segre:" + ",".join(map(str, dims)))


def segre_class_vector(dims: Sequence[int], shifts: Sequence[int], cone: Cone) -> tuple[int, ...]:
    """u with D(u) isomorphic to R_1(-s_1) # ... # R_k(-s_k), in the cone's form order.

    Requiring exponent a_1 of factor i to be at least s_i shifts that factor by s_i.
    """
    if len(shifts) != len(dims):
        raise ValueError("one shift per factor")
    forms = segre_exponent_forms(dims)
    u_embed = [0] * len(forms)
    pos = 0
    for di, si in zip(dims, shifts):
        u_embed[pos] = int(si)
        pos += di
    index = {f: i for i, f in enumerate(cone.forms)}
    u = [0] * cone.s
    for f, val in zip(forms, u_embed):
        u[index[f]] = val
    return tuple(u)


def veronese(d: int, c: int) -> Cone:
    """Degree-c Veronese of K[x_1..x_d] in the basis e_j - e_d (j < d), c e_d."""
    gens = []
    for a in _compositions(c, d):
        gens.append(tuple(a[:-1]) + (1,))
    return _named(support_forms(gens, d), f"veronese:{d},{c}")


def _named(cone: Cone, name: str) -> Cone:
    object.__setattr__(cone, "name", name)
    return cone


def preset(spec: str) -> Cone:
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    try:
        args = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise ValueError(f"bad preset arguments in {spec!r}") from None
    if name == "orthant" and len(args) == 1:
        return orthant(args[0])
    if name == "figure1" and not args:
        return figure1()
    if name == "segre" and args:
        return segre(args)
    if name == "veronese" and len(args) == 2:
        return veronese(*args)
    raise ValueError(f"unknown preset {spec!r}")


PRESET_NAMES = ("orthant:d", "figure1", "segre:d1,...,dk", "veronese:d,c")


def segre_conic_differences(dims: Sequence[int], window: tuple[int, int]) -> list[tuple[int, ...]]:
    """Difference vectors (s_2-s_1, ...) in the window whose Segre class is conic."""
    from .conic import is_conic

    cone = segre(dims)
    lo, hi = window
    out = []
    for diff in itertools.product(range(lo, hi + 1), repeat=len(dims) - 1):
        u = segre_class_vector(dims, (0,) + diff, cone)
        if is_conic(cone, None, u):
            out.append(diff)
    return out
