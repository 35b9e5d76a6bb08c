import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from phaseloc.quadreal import QuadReal, squarefree_split

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20).filter(lambda f: f != 0)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10])


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(50) == (5, 2)


def test_normalises_radicand():
    assert QuadReal(1, 8) == QuadReal(2, 2)
    assert QuadReal(3, 9) == QuadReal(9, 1)


def test_sqrt_ratio_and_reciprocal():
    r = QuadReal.sqrt_ratio(1, 2)
    assert math.isclose(float(r), math.sqrt(0.5), rel_tol=1e-15)
    assert r.reciprocal() == QuadReal(1, 2)
    assert r * r.reciprocal() == QuadReal(1)
    assert QuadReal(1, 2) * QuadReal(1, 2) == QuadReal(2)


def test_rejects_floats():
    with pytest.raises(TypeError):
        QuadReal(0.5, 2)


def test_str():
    assert str(QuadReal(Fraction(1, 2), 2)) == "1/2*sqrt(2)"


@given(fractions, fractions, radicands)
def test_comparisons_match_floats(a, b, d):
    x, y = QuadReal(a, d), QuadReal(b, d)
    assert (x < y) == (float(x) < float(y))
    assert (x == y) == (a == b)


@given(fractions, radicands)
def test_reciprocal_roundtrip(a, d):
    x = QuadReal(a, d)
    assert x.reciprocal().reciprocal() == x
    assert math.isclose(float(x.reciprocal()), 1 / float(x), rel_tol=1e-14)
    assert (x / x) == QuadReal(1)
