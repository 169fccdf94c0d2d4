"""Parametrized rational curves: exact approximation constants and
approximating sequences."""

import math
from fractions import Fraction

import pytest

from cubapprox.curves import (ApproxSequence, BranchNotInKv, ParamCurve,
                              PointNotOnCurve, branch_data, curve_alpha,
                              sequence_on_curve)
from cubapprox.forms import parse_form
from cubapprox.localfield import Place
from cubapprox.points import ProjPoint, dist

REAL = Place.real()
P5 = Place(5)
P7 = Place(7)

LINE = ParamCurve.parse("s; t; 0")
CONIC = ParamCurve.parse("s^2; s*t; t^2")
CUSPIDAL = ParamCurve.parse("s^3; s^2*t; t^3")          # x1^3 = x0^2*x2
SPLIT_NODE = ParamCurve.parse("s*t^2 - s^3; t^3 - s^2*t; s^3")
IRR_NODE = ParamCurve.parse("s*t^2 - 2*s^3; t^3 - 2*s^2*t; s^3")


def P(text):
    return ProjPoint.parse(text)


# (curve, point, place, expected alpha); inf = no branch over k_v
ALPHA_TABLE = [
    (LINE, "1:0:0", REAL, 1),
    (LINE, "1:0:0", P5, 1),
    (LINE, "1:1:0", P7, 1),
    (CONIC, "1:0:0", REAL, 2),
    (CONIC, "0:0:1", REAL, 2),
    (CONIC, "1:0:0", P5, 2),
    (CONIC, "1:1:1", REAL, 2),
    (CONIC, "4:6:9", P7, 2),
    (CUSPIDAL, "0:0:1", REAL, "3/2"),     # cusp: m = 2
    (CUSPIDAL, "0:0:1", P5, "3/2"),
    (CUSPIDAL, "0:0:1", P7, "3/2"),
    (CUSPIDAL, "1:1:1", REAL, 3),         # smooth point, rational preimage
    (SPLIT_NODE, "0:0:1", REAL, 3),       # node, both branches rational
    (SPLIT_NODE, "0:0:1", P5, 3),
    (SPLIT_NODE, "0:0:1", P7, 3),
    (IRR_NODE, "0:0:1", REAL, "3/2"),     # tangents s^2 = 2 t^2: real
    (IRR_NODE, "0:0:1", P7, "3/2"),       # 2 is a square mod 7
    (IRR_NODE, "0:0:1", P5, math.inf),    # 2 is not a square mod 5
    (IRR_NODE, "2:4:1", P5, 3),           # smooth rational point elsewhere
    (ParamCurve.parse("s^3; t^3"), "0:1", REAL, 1),   # m = 3 branch
    (ParamCurve.parse("s^3; t^3"), "0:1", P5, 1),
]


@pytest.mark.parametrize("curve,pt,place,expected", ALPHA_TABLE)
def test_alpha_table(curve, pt, place, expected):
    want = expected if expected == math.inf else Fraction(str(expected))
    got = curve_alpha(curve, P(pt), place)
    assert got == want


def test_cuspidal_branch_details():
    data = branch_data(CUSPIDAL, P("0:0:1"), REAL)
    assert len(data) == 1
    b = data[0]
    assert (b.kappa_degree, b.m_q, b.r_q, b.in_kv) == (1, 2, 1, True)


def test_irrational_node_branch_details():
    for place, in_kv in ((REAL, True), (P5, False), (P7, True)):
        data = branch_data(IRR_NODE, P("0:0:1"), place)
        assert len(data) == 2         # a conjugate pair
        for b in data:
            assert (b.kappa_degree, b.m_q) == (2, 1)
            assert b.in_kv is in_kv
            assert b.r_q == (2 if in_kv else 0)


def test_point_not_on_curve():
    with pytest.raises(PointNotOnCurve):
        curve_alpha(CONIC, P("1:1:0"), REAL)


def test_branch_not_in_kv():
    b = branch_data(IRR_NODE, P("0:0:1"), P5)[0]
    with pytest.raises(BranchNotInKv):
        sequence_on_curve(IRR_NODE, b, P("0:0:1"), P5, 5)


class TestParamCurve:
    def test_parse_round_trip(self):
        for text in ("s; t; 0", "s^2; s*t; t^2",
                     "s*t^2 - 2*s^3; t^3 - 2*s^2*t; s^3"):
            c = ParamCurve.parse(text)
            assert ParamCurve.parse(str(c)) == c

    def test_common_factor_removed(self):
        c = ParamCurve.parse("s^2; s*t")
        assert c.degree_L == 1
        assert c == ParamCurve.parse("s; t")

    def test_mixed_degrees_rejected(self):
        with pytest.raises(ValueError):
            ParamCurve.parse("s^2; t")

    def test_line_through(self):
        L = ParamCurve.line_through(P("1:0:0"), P("0:1:-1"))
        assert L.degree_L == 1
        assert L.lies_on(parse_form("x1 + x2"))

    def test_lies_on(self):
        fermat_like = parse_form("x1^3 - x0^2*x2")
        assert CUSPIDAL.lies_on(fermat_like)
        assert not CONIC.lies_on(fermat_like)

    def test_evaluate(self):
        assert CONIC.evaluate(2, 3) == P("4:6:9")


class TestSequences:
    @pytest.mark.parametrize("curve,pt,place", [
        (LINE, "1:0:0", REAL),
        (LINE, "1:0:0", P5),
        (CUSPIDAL, "0:0:1", REAL),
        (CUSPIDAL, "0:0:1", P7),
        (IRR_NODE, "0:0:1", REAL),
        (IRR_NODE, "0:0:1", P7),
    ])
    def test_delta_approaches_alpha(self, curve, pt, place):
        target = P(pt)
        alpha = curve_alpha(curve, target, place)
        branches = [b for b in branch_data(curve, target, place)
                    if b.in_kv and b.alpha_contribution(
                        curve.degree_L) == alpha]
        seq = sequence_on_curve(curve, branches[0], target, place, 14)
        assert len(seq.points) >= 8
        deltas = seq.deltas()
        assert abs(deltas[-1] - float(alpha)) < 0.15

    def test_points_lie_on_curve(self):
        target = P("0:0:1")
        b = branch_data(IRR_NODE, target, REAL)[0]
        seq = sequence_on_curve(IRR_NODE, b, target, REAL, 10)
        f = parse_form("x1^2*x2 - x0^3 - 2*x0^2*x2")
        for x in seq.points:
            assert f.evaluate(list(x.coords)) == 0

    def test_distances_strictly_decrease(self):
        target = P("1:0:0")
        b = branch_data(LINE, target, REAL)[0]
        seq = sequence_on_curve(LINE, b, target, REAL, 10)
        ds = [dist(x, target, REAL) for x in seq.points]
        assert all(a > b2 for a, b2 in zip(ds, ds[1:]))

    def test_constructor_rejects_bad_sequences(self):
        tgt = P("1:0")
        with pytest.raises(ValueError):
            ApproxSequence((tgt,), tgt, REAL, "self")
        with pytest.raises(ValueError):
            ApproxSequence((P("3:1"), P("2:1")), tgt, REAL, "not shrinking")
