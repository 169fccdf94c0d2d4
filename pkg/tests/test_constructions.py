"""Residual conics and nodal projection cubics."""

from fractions import Fraction

import pytest

from cubapprox.catalog import get_entry
from cubapprox.constructions import (EmptyLocalQuadric, PointOnLine,
                                     WrongRegime, projection_curve,
                                     psi_phi_identity_check, residual_conic)
from cubapprox.curves import ParamCurve, branch_data, curve_alpha
from cubapprox.forms import HomForm, parse_form
from cubapprox.hypersurface import CubicHypersurface, tangent_section
from cubapprox.localfield import Place
from cubapprox.points import ProjPoint

REAL = Place.real()
FERMAT = CubicHypersurface(parse_form("x0^3 + x1^3 + x2^3 + x3^3"))
FERMAT_LINE = ParamCurve.parse("s; -s; t; -t")


def P(text):
    return ProjPoint.parse(text)


class TestResidualConic:
    def test_fermat_generic_point(self):
        res = residual_conic(FERMAT, P("3:4:5:-6"), FERMAT_LINE)
        assert res.kind == "conic"
        C = res.conic
        assert C.degree_L == 2
        assert C.lies_on(FERMAT.form)
        # P lies on the conic, with alpha = 2 there
        assert C.preimage_system(P("3:4:5:-6")).degree >= 1
        assert curve_alpha(C, P("3:4:5:-6"), REAL) == 2

    def test_plane_restriction_factors_exactly(self):
        """line factor times the residual quadric equals the restriction
        of the cubic to the plane."""
        res = residual_conic(FERMAT, P("3:4:5:-6"), FERMAT_LINE)
        basis = res.plane_basis
        parts = [HomForm.linear([Fraction(basis[0][i]),
                                 Fraction(basis[1][i]),
                                 Fraction(basis[2][i])])
                 for i in range(4)]
        R = FERMAT.form.compose(parts)
        assert R == res.line_factor * res.conic_form

    def test_point_on_line_rejected(self):
        with pytest.raises(PointOnLine):
            residual_conic(FERMAT, P("1:-1:0:0"), FERMAT_LINE)

    def test_line_not_on_x_rejected(self):
        with pytest.raises(ValueError):
            residual_conic(FERMAT, P("3:4:5:-6"),
                           ParamCurve.parse("s; t; 0; 0"))

    def test_split_case(self):
        # on-line-split-section: the plane through P and the catalog line
        # cuts the section into lines
        e = get_entry("split-node")
        X, pt = e.hypersurface(), e.point()
        res = residual_conic(X, pt, e.line())
        assert res.kind in ("conic", "split")
        if res.kind == "split":
            for L in res.lines:
                assert L.degree_L == 1
                assert L.lies_on(X.form)

    def test_conic_on_threefold(self):
        e = get_entry("threefold-generic")
        X = e.hypersurface()
        res = residual_conic(X, e.point(), e.line())
        assert res.kind in ("conic", "split")
        if res.kind == "conic":
            assert res.conic.lies_on(X.form)


class TestProjectionCurve:
    @pytest.mark.parametrize("name,place", [
        ("real-node", REAL),
        ("real-node", Place(7)),
        ("imag-node", Place(5)),
        ("threefold-generic", REAL),
        ("threefold-generic", Place(5)),
    ])
    def test_postconditions(self, name, place):
        e = get_entry(name)
        S = tangent_section(e.hypersurface(), e.point())
        res = projection_curve(S, place)
        C = res.curve
        assert C.degree_L == 3
        assert C.lies_on(e.hypersurface().form)
        assert curve_alpha(C, e.point(), place) == Fraction(3, 2)
        branches = branch_data(C, e.point(), place)
        assert all(b.kappa_degree == 2 and b.in_kv for b in branches)
        assert res.quadratic_point is not None

    def test_cusp_variant(self):
        e = get_entry("cusp")
        S = tangent_section(e.hypersurface(), e.point())
        res = projection_curve(S, REAL)
        assert res.quadratic_point is None
        C = res.curve
        assert C.degree_L == 3 and C.lies_on(e.hypersurface().form)
        branches = branch_data(C, e.point(), REAL)
        assert len(branches) == 1
        b = branches[0]
        assert (b.kappa_degree, b.m_q) == (1, 2)
        assert curve_alpha(C, e.point(), REAL) == Fraction(3, 2)

    def test_wrong_regime_split(self):
        e = get_entry("split-node")
        S = tangent_section(e.hypersurface(), e.point())
        with pytest.raises(WrongRegime):
            projection_curve(S, REAL)

    def test_empty_local_quadric(self):
        e = get_entry("real-node")      # disc 8: not a square in Q5
        S = tangent_section(e.hypersurface(), e.point())
        with pytest.raises(EmptyLocalQuadric):
            projection_curve(S, Place(5))

    def test_threefold_definite_real(self):
        e = get_entry("threefold-isolated")
        S = tangent_section(e.hypersurface(), e.point())
        with pytest.raises(EmptyLocalQuadric):
            projection_curve(S, REAL)

    def test_deterministic(self):
        e = get_entry("threefold-generic")
        S = tangent_section(e.hypersurface(), e.point())
        a = projection_curve(S, REAL, seed=3)
        b = projection_curve(S, REAL, seed=3)
        assert a.curve == b.curve
        assert a.line_in_base == b.line_in_base


@pytest.mark.parametrize("name", ["real-node", "imag-node", "cusp",
                                  "threefold-generic"])
def test_psi_inverts_projection(name):
    e = get_entry(name)
    S = tangent_section(e.hypersurface(), e.point())
    assert psi_phi_identity_check(S, trials=100)
