import itertools
from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicdiv.linalg import (
    determinant,
    matmul,
    nullspace,
    primitive_part,
    rank,
    smith_normal_form,
)


def leibniz_det(a):
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i, p in enumerate(perm):
            term *= a[i][p]
        total += term
    return total


def determinantal_divisors(a):
    """gcd of all k x k minors, k = 1..rank; the invariant factors are their ratios."""
    m, n = len(a), len(a[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, leibniz_det([[a[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def oracle_invariant_factors(a):
    dd = determinantal_divisors(a)
    return [dd[0]] + [dd[i] // dd[i - 1] for i in range(1, len(dd))] if dd else []


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@pytest.mark.parametrize(
    "a, diag",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[0, 1], [3, -1]], (1, 3)),
        ([[0, 0], [0, 0]], (0, 0)),
    ],
)
def test_snf_examples(a, diag):
    snf = smith_normal_form(a)
    assert snf.diagonal == diag
    assert matmul(matmul(snf.U, a), snf.V) == snf.D


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_reconstruction_and_unimodularity(a):
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.U, a), snf.V) == snf.D
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    D = snf.D
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    diag = list(snf.diagonal)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == oracle_invariant_factors(a)


def test_snf_large_entries_stay_exact():
    a = [[10**30 + 7, 3], [5, 10**25 + 1], [2, 9]]
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.U, a), snf.V) == snf.D


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(a):
    assert determinant(a) == leibniz_det(a)


def test_nullspace_and_rank():
    rows = [[1, 2, 3], [2, 4, 6]]
    assert rank(rows) == 1
    ker = nullspace(rows, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(Fraction(x) * y for x, y in zip(r, v)) == 0 for r in rows)


@pytest.mark.parametrize(
    "v, expected",
    [((2, 4), (1, 2)), ((0, -3), (0, -1)), ((6, 10, 15), (6, 10, 15))],
)
def test_primitive_part_examples(v, expected):
    assert primitive_part(v) == expected


def test_primitive_part_rejects_zero():
    with pytest.raises(ValueError):
        primitive_part((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(any))
def test_primitive_part_properties(v):
    p = primitive_part(v)
    assert primitive_part(p) == p
    assert reduce(gcd, p, 0) == 1
    # positive multiple of the input
    k = next(Fraction(x, y) for x, y in zip(v, p) if y)
    assert k > 0 and all(Fraction(x) == k * y for x, y in zip(v, p))


def test_primitive_part_of_rationals():
    assert primitive_part((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
