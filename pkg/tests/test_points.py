"""Projective points, heights, and place-adapted distances."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubapprox.localfield import Place
from cubapprox.points import (ProjPoint, delta_exponent, dist, height,
                              log_dist)

REAL = Place.real()
P5 = Place(5)


def test_canonicalization():
    assert ProjPoint.of(-2, 4, -6).coords == (1, -2, 3)
    assert ProjPoint.of(0, -3, 9).coords == (0, 1, -3)
    with pytest.raises(ValueError):
        ProjPoint.of(0, 0)


def test_parse_and_str_round_trip():
    p = ProjPoint.parse("3:4:5:-6")
    assert p.coords == (3, 4, 5, -6)
    assert ProjPoint.parse(str(p)) == p


def test_from_rationals():
    p = ProjPoint.from_rationals([Fraction(1, 2), Fraction(1, 3), 1])
    assert p.coords == (3, 2, 6)


def test_height():
    assert height(ProjPoint.of(3, 4, 5, -6)) == 6
    assert height(ProjPoint.of(0, 1)) == 1


class TestDist:
    def test_real_example(self):
        # minors of (1,0),(1,1): 1*1 - 0*1 = 1; heights 1 and 1
        assert dist(ProjPoint.of(1, 0), ProjPoint.of(1, 1), REAL) == 1

    def test_real_antipodal_reaches_two(self):
        assert dist(ProjPoint.of(1, 1), ProjPoint.of(1, -1), REAL) == 2

    def test_padic_example(self):
        # [1:1] vs [1:1+5^3] differ to 5-adic order exactly 3
        assert dist(ProjPoint.of(1, 1), ProjPoint.of(1, 1 + 125), P5) == \
            Fraction(1, 125)

    def test_padic_unit_distance(self):
        assert dist(ProjPoint.of(1, 0), ProjPoint.of(0, 1), P5) == 1

    def test_same_point_zero(self):
        p = ProjPoint.of(2, -4, 6)
        assert dist(p, ProjPoint.of(-1, 2, -3), REAL) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dist(ProjPoint.of(1, 0), ProjPoint.of(1, 0, 0), REAL)


coords = st.lists(st.integers(-40, 40), min_size=3, max_size=3).filter(
    lambda c: any(c))
places = st.sampled_from([REAL, Place(2), P5, Place(7)])


@given(coords, coords, places)
@settings(max_examples=150, deadline=None)
def test_dist_symmetric_and_bounded(a, b, v):
    x, y = ProjPoint(tuple(a)), ProjPoint(tuple(b))
    d = dist(x, y, v)
    assert d == dist(y, x, v)
    assert 0 <= d <= (2 if v.is_real else 1)
    assert (d == 0) == (x == y)


@given(coords, coords, st.integers(2, 9).filter(lambda n: n != 1), places)
@settings(max_examples=100, deadline=None)
def test_dist_scaling_invariant(a, b, s, v):
    x, y = ProjPoint(tuple(a)), ProjPoint(tuple(b))
    xs = ProjPoint(tuple(s * c for c in a))
    assert dist(xs, y, v) == dist(x, y, v)


@given(coords, coords, coords, st.sampled_from([Place(2), P5, Place(7)]))
@settings(max_examples=150, deadline=None)
def test_padic_ultrametric(a, b, c, v):
    x, y, z = ProjPoint(tuple(a)), ProjPoint(tuple(b)), ProjPoint(tuple(c))
    dxz = dist(x, z, v)
    assert dxz <= max(dist(x, y, v), dist(y, z, v))


def test_log_dist_matches_float():
    x, y = ProjPoint.of(1, 1), ProjPoint.of(1, 1 + 125)
    assert log_dist(x, y, P5) == pytest.approx(-3 * math.log(5))
    assert log_dist(x, x, P5) == -math.inf


def test_delta_exponent():
    x = ProjPoint.of(1, 126)
    target = ProjPoint.of(1, 1)
    got = delta_exponent(x, target, P5)
    assert got == pytest.approx(math.log(126) / (3 * math.log(5)))
