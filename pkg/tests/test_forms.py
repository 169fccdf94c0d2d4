"""Exact homogeneous form arithmetic, parsing, and coordinate changes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubapprox.forms import (FormParseError, HomForm, SingularChange,
                             mat_inverse, parse_form)


def F(text, n=None):
    return parse_form(text, n_vars=n)


class TestBasics:
    def test_canonical_no_zero_terms(self):
        f = F("x0^2 - x0^2 + x1^2")
        assert f.terms == {(0, 2): Fraction(1)}

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            HomForm(2, 2, {(1, 0): Fraction(1)})

    def test_add_mul(self):
        x0, x1 = HomForm.variable(2, 0), HomForm.variable(2, 1)
        assert (x0 + x1) * (x0 - x1) == F("x0^2 - x1^2")
        assert (x0 + x1) ** 3 == F("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3")

    def test_evaluate(self):
        f = F("x0^3 + x1^3 + x2^3 + x3^3")
        assert f.evaluate([3, 4, 5, -6]) == 0
        assert f.evaluate([1, 1, 1, 1]) == 4

    def test_gradient(self):
        f = F("x0^2*x1")
        gx, gy = f.gradient()
        assert gx == F("2*x0*x1")
        assert gy == F("x0^2", 2)

    def test_str_round_trip(self):
        for text in ("x0^3 + x1^3", "3/2*x0^2*x1 - x1^3",
                     "x0*x1*x2 - 2*x2^3"):
            f = parse_form(text)
            assert parse_form(str(f), n_vars=f.n_vars) == f

    def test_parse_rational_coeff(self):
        f = F("1/3*x0^2 + x1^2")
        assert f.coeff((2, 0)) == Fraction(1, 3)

    def test_parse_error_position(self):
        with pytest.raises(FormParseError):
            parse_form("x0^")
        with pytest.raises(FormParseError):
            parse_form("x0 + * x1")

    def test_inhomogeneous_rejected(self):
        with pytest.raises(FormParseError):
            parse_form("x0^2 + x1")


class TestSubstitution:
    def test_identity(self):
        f = F("x0^3 + x1^3")
        eye = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
        assert f.substitute_linear(eye) == f

    def test_swap(self):
        f = F("x0^2", 2)
        swap = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        assert f.substitute_linear(swap) == F("x1^2")

    def test_shear(self):
        # x0 -> x0 + x1 in x0^2*x1
        f = F("x0^2*x1")
        M = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
        assert f.substitute_linear(M) == F(
            "x0^2*x1 + 2*x0*x1^2 + x1^3")

    def test_singular_rejected(self):
        f = F("x0^2", 2)
        M = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
        with pytest.raises(SingularChange):
            f.substitute_linear(M)


@st.composite
def unimodular_2x2(draw):
    # products of elementary shears are unimodular and stay small
    a = draw(st.integers(-3, 3))
    b = draw(st.integers(-3, 3))
    M = [[Fraction(1), Fraction(a)], [Fraction(0), Fraction(1)]]
    N = [[Fraction(1), Fraction(0)], [Fraction(b), Fraction(1)]]
    return [[sum(M[i][k] * N[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]


@st.composite
def small_forms(draw, n_vars=2, degree=3):
    terms = {}
    exps = [(i, degree - i) for i in range(degree + 1)]
    for e in exps:
        c = draw(st.integers(-5, 5))
        if c:
            terms[e] = Fraction(c)
    if not terms:
        terms[exps[0]] = Fraction(1)
    return HomForm(n_vars, degree, terms)


@given(small_forms(), unimodular_2x2())
@settings(max_examples=60, deadline=None)
def test_substitute_round_trip(f, M):
    back = f.substitute_linear(M).substitute_linear(mat_inverse(M))
    assert back == f


@given(small_forms(), small_forms())
@settings(max_examples=40, deadline=None)
def test_product_evaluates_pointwise(f, g):
    h = f * g
    for pt in ((1, 2), (-3, 5), (0, 1)):
        assert h.evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
