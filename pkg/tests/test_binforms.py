"""Binary form factorization (degree <= 4) against a sympy oracle."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cubapprox.binforms import (binform, coeff_list, factor_binary_form,
                                is_rational_square, quadratic_discriminant,
                                rational_roots, sqrt_rational)
from cubapprox.forms import HomForm, parse_form


def B(text):
    return parse_form(text, n_vars=2)


def test_split_product():
    facs = factor_binary_form(B("x0*x1"))
    assert sorted((f.degree, m) for f, m in facs) == [(1, 1), (1, 1)]


def test_irreducible_quadratic():
    facs = factor_binary_form(B("x0^2 + x1^2"))
    assert facs == [(B("x0^2 + x1^2"), 1)]
    assert quadratic_discriminant(B("x0^2 + x1^2")) == -4


def test_cubic_no_rational_root():
    facs = factor_binary_form(B("x0^3 - 2*x1^3"))
    assert facs == [(B("x0^3 - 2*x1^3"), 1)]
    assert rational_roots([1, 0, 0, -2]) == []


def test_repeated_factor():
    facs = factor_binary_form(B("x0^2*x1"))
    assert sorted((str(f), m) for f, m in facs) == [("x0", 2), ("x1", 1)]


def test_quartic_two_quadratics():
    # (x0^2 + x1^2)(x0^2 - 2 x1^2), no rational roots
    f = B("x0^4 - x0^2*x1^2 - 2*x1^4")
    facs = factor_binary_form(f)
    degs = sorted(g.degree for g, _ in facs)
    assert degs == [2, 2]


def _reassemble(form, facs):
    prod = HomForm(2, 0, {(0, 0): Fraction(1)})
    for g, m in facs:
        prod = prod * g ** m
    # equal up to a scalar
    for e, c in form.terms.items():
        if e in prod.terms:
            scale = c / prod.terms[e]
            break
    return prod.scale(scale), form


@st.composite
def random_binforms(draw):
    deg = draw(st.integers(1, 4))
    coeffs = [draw(st.integers(-6, 6)) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[0] = 1
    return binform([Fraction(c) for c in coeffs])


@given(random_binforms())
@settings(max_examples=80, deadline=None)
def test_factorization_reassembles(f):
    facs = factor_binary_form(f)
    prod, orig = _reassemble(f, facs)
    assert prod == orig
    assert sum(g.degree * m for g, m in facs) == f.degree


@given(random_binforms())
@settings(max_examples=60, deadline=None)
def test_factor_count_matches_sympy(f):
    s, t = sp.symbols("s t")
    expr = sum(int(c) * s ** (f.degree - i) * t ** i
               for i, c in enumerate(coeff_list(f)))
    _, sfacs = sp.factor_list(expr, s, t)
    smult = sorted(sp.Poly(g, s, t).total_degree() * m for g, m in sfacs)
    ours = sorted(g.degree * m for g, m in factor_binary_form(f))
    assert ours == smult


@pytest.mark.parametrize("x,sq", [
    (Fraction(4), True), (Fraction(9, 16), True), (Fraction(2), False),
    (Fraction(-4), False), (Fraction(0), True)])
def test_is_rational_square(x, sq):
    assert is_rational_square(x) is sq
    if sq:
        r = sqrt_rational(x)
        assert r * r == x
