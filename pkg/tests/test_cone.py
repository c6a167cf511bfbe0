import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicdiv.cone import (
    NotFullDimensionalError,
    NotPointedError,
    _facet_normals_bruteforce,
    ceil_sigma,
    dual_extreme_rays,
    from_support_forms,
    hilbert_basis,
    is_positive,
    support_forms,
)
from conicdiv.presets import preset

from .conftest import SMALL_EXAMPLES, example


def monoid_points(cone, bound):
    """Nonzero lattice points of the cone with every coordinate in [-bound, bound]."""
    rng = range(-bound, bound + 1)
    return [p for p in itertools.product(rng, repeat=cone.dim) if any(p) and cone.contains(p)]


def brute_hilbert_basis(cone, bound):
    """Elements of M in a coordinate box that are not a sum of two nonzero elements.

    Summands of a boxed point are searched in a three times larger box.
    """
    summands = monoid_points(cone, 3 * bound)
    out = []
    for p in monoid_points(cone, bound):
        if not any(q != p and cone.contains(tuple(a - b for a, b in zip(p, q))) for q in summands):
            out.append(p)
    return sorted(out)


# -- support forms ---------------------------------------------------------


def test_orthant_forms():
    assert support_forms([(1, 0), (0, 1)], 2).forms == ((0, 1), (1, 0))


def test_figure1_forms():
    cone = support_forms([(1, 0), (1, 3)], 2)
    assert cone.forms == ((0, 1), (3, -1))
    assert all(v >= 0 for g in cone.generators for v in cone.sigma(g))


def test_triple_segre_forms_are_coordinates():
    cone = preset("segre:3,3,3")
    assert cone.dim == 7 and cone.s == 9
    # each form is an exponent coordinate: it takes values in {0, 1} on the generators
    for f in cone.forms:
        vals = {sum(a * b for a, b in zip(f, g)) for g in cone.generators}
        assert vals == {0, 1}


def test_errors_are_distinct():
    with pytest.raises(NotFullDimensionalError):
        support_forms([(1, 0), (2, 0)], 2)
    with pytest.raises(NotPointedError):
        support_forms([(1, 0), (-1, 0), (0, 1)], 2)
    with pytest.raises(ValueError):
        support_forms([(1, 0, 0)], 2)


def test_redundant_generators_ignored():
    cone = support_forms([(1, 0), (1, 1), (1, 2), (1, 3), (2, 3)], 2)
    assert cone.forms == ((0, 1), (3, -1))


gen2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=80, deadline=None)
@given(st.lists(gen2, min_size=3, max_size=7))
def test_double_description_matches_bruteforce(gens):
    from conicdiv.linalg import rank

    if rank(gens) < 3:
        return
    brute = _facet_normals_bruteforce(gens, 3)
    # brute force finds forms of pointed cones; a full-rank row set always has a DD answer
    try:
        dd = dual_extreme_rays(gens, 3)
    except ValueError:
        pytest.fail("full-rank input rejected")
    if brute and rank(list(brute)) == 3:
        assert dd == brute


def test_from_support_forms_round_trip():
    for name in SMALL_EXAMPLES + ["segre:2,3"]:
        cone = preset(name)
        again = from_support_forms(cone.forms, cone.dim)
        assert again.forms == cone.forms
        # redundant, non-primitive extra form is dropped
        extra = tuple(2 * a + 2 * b for a, b in zip(cone.forms[0], cone.forms[1]))
        assert from_support_forms(cone.forms + (extra,), cone.dim).forms == cone.forms


def test_from_support_forms_errors():
    with pytest.raises(NotPointedError):
        from_support_forms([(0, 1)], 2)


# -- positivity and sigma --------------------------------------------------


def test_is_positive():
    assert is_positive(preset("orthant:2"))
    assert is_positive(preset("figure1"))
    halfplane = type(preset("orthant:2"))(2, ((1, 0), (-1, 0), (0, 1)), ((0, 1),))
    assert not is_positive(halfplane)


def test_ceil_sigma_examples():
    cone = preset("figure1")
    assert ceil_sigma(cone, (0, 0)).ceiling == (0, 0)
    v = ceil_sigma(cone, (Fraction(1, 2), Fraction(1, 2)))
    assert v.value == (Fraction(1, 2), 1) and v.ceiling == (1, 1)
    v = ceil_sigma(cone, (Fraction(1, 2), 0))
    assert v.value == (0, Fraction(3, 2)) and v.ceiling == (0, 2)


@given(st.tuples(st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7)))
def test_ceiling_bracket(x):
    v = ceil_sigma(preset("figure1"), x)
    assert all(c - 1 < a <= c for a, c in zip(v.value, v.ceiling))


# -- Hilbert basis ---------------------------------------------------------


def test_hilbert_basis_examples():
    assert hilbert_basis(preset("orthant:2")) == ((0, 1), (1, 0))
    assert hilbert_basis(preset("figure1")) == ((1, 0), (1, 1), (1, 2), (1, 3))
    cone = support_forms([(0, 1), (1, 1), (2, 1)], 2)
    assert hilbert_basis(cone) == ((0, 1), (1, 1), (2, 1))


@pytest.mark.parametrize("name", ["figure1", "segre:2,2", "veronese:2,3", "veronese:3,2"])
def test_hilbert_basis_against_brute_force(name):
    cone = preset(name)
    hb = list(hilbert_basis(cone))
    bound = max(abs(x) for g in hb for x in g) + 1
    assert hb == brute_hilbert_basis(cone, bound)


@pytest.mark.parametrize("name", SMALL_EXAMPLES + ["segre:2,3"])
def test_hilbert_basis_invariants(name):
    cone = example(name).cone
    hb = hilbert_basis(cone)
    for g in hb:
        assert cone.contains(g)
    # irreducible: no other basis element is a summand
    for g in hb:
        for h in hb:
            if h != g:
                assert not cone.contains(tuple(a - b for a, b in zip(g, h)))
    # the cone generated by the Hilbert basis has the same facets
    assert support_forms(hb, cone.dim).forms == cone.forms


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_forms_attain_one(name):
    cone = example(name).cone
    for f in cone.forms:
        # primitive forms are surjective onto Z; find a witness in a small box
        assert any(
            sum(a * b for a, b in zip(f, p)) == 1
            for p in itertools.product(range(-3, 4), repeat=cone.dim)
        )
