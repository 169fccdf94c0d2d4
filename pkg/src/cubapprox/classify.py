"""Predicted approximation constants for points on cubic hypersurfaces.

The decision runs through the tangent section S_P = {f3 + y_last*g = 0}:
rational lines through P force alpha = 1; isolation of P among the
rational points of S_P (or rational tangent directions, for surfaces)
forces alpha = 2; in the remaining cases rational points of S_P
accumulate at P along a nodal cubic and alpha = 3/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .binforms import factor_binary_form
from .curves import ParamCurve
from .forms import HomForm
from .hypersurface import (CubicHypersurface, TangentSection, WorseThanNode,
                           line_from_direction, linear_factors,
                           lines_through_point, tangent_cone_analysis,
                           tangent_section, _primitive_vectors)
from .localfield import Place, quadric_has_local_point
from .points import ProjPoint

HALF3 = Fraction(3, 2)


@dataclass(frozen=True)
class Certificate:
    """One machine-checkable piece of evidence behind a verdict."""

    kind: str
    description: str
    curve: Optional[ParamCurve] = None
    form: Optional[HomForm] = None
    point: Optional[ProjPoint] = None


@dataclass(frozen=True)
class ClassificationResult:
    case: str                  # OnRationalLine | IsolatedInSection |
    #                            RationalTangentLines | Generic | Unknown
    predicted_alpha: Optional[Fraction]
    place: Place
    confidence: str            # "Proved" | "HeuristicUpTo(B)"
    certificates: Tuple[Certificate, ...]
    alpha_lower: Fraction = Fraction(1)
    alpha_upper: Fraction = Fraction(2)

    def certificate(self, kind: str) -> Optional[Certificate]:
        return next((c for c in self.certificates if c.kind == kind), None)


def classify(X: CubicHypersurface, P: ProjPoint, v: Place,
             search_bound: int = 100, seed: int = 0,
             attempts: int = 64) -> ClassificationResult:
    """Decide the predicted approximation constant of P on X at v."""
    S = tangent_section(X, P)
    lines, exhaustive = lines_through_point(X, P, search_bound, S)
    if lines:
        cert = Certificate("line", "rational line through P on X",
                           curve=lines[0])
        return ClassificationResult(
            "OnRationalLine", Fraction(1), v, "Proved", (cert,),
            Fraction(1), Fraction(1))
    heur = "Proved" if exhaustive else f"HeuristicUpTo({search_bound})"
    if X.n_vars == 4:
        return _classify_surface(X, P, v, S)
    return _classify_high_dim(X, P, v, S, search_bound, seed, attempts, heur)


def _classify_surface(X, P, v, S: TangentSection) -> ClassificationResult:
    """Surface branch; every verdict here is exact.

    No rational line passes through P at this point, which rules the
    split-section case into isolation: a reducible section is a line off
    P plus a pair of conjugate lines meeting at P.
    """
    section = S.section
    facs = linear_factors(section)
    if facs:
        cert = Certificate(
            "section-split",
            "tangent section is reducible; the components through P are "
            "a conjugate pair of irrational lines", form=facs[0])
        return ClassificationResult(
            "IsolatedInSection", Fraction(2), v, "Proved", (cert,),
            Fraction(2), Fraction(2))
    if S.g.is_zero():
        # section = f3(y0, y1): a cone of three lines through P, none
        # rational (a rational root would have been a line through P)
        cert = Certificate(
            "cone", "tangent section is a cone over P with irrational "
            "rulings; P is its only rational point", form=S.f3)
        return ClassificationResult(
            "IsolatedInSection", Fraction(2), v, "Proved", (cert,),
            Fraction(2), Fraction(2))
    report = tangent_cone_analysis(S, v)
    cert = Certificate("tangent-cone",
                       f"tangent cone shape {report.shape}, "
                       f"discriminant {report.discriminant}",
                       form=report.quadric)
    if report.shape == "SplitRational":
        return ClassificationResult(
            "RationalTangentLines", Fraction(2), v, "Proved", (cert,),
            Fraction(2), Fraction(2))
    if report.shape == "NonSplitOverKv":
        return ClassificationResult(
            "IsolatedInSection", Fraction(2), v, "Proved", (cert,),
            Fraction(2), Fraction(2))
    # SplitQuadraticInKv (node with conjugate local tangents) or
    # DoubleLine (cusp): the section itself approximates at exponent 3/2
    return ClassificationResult(
        "Generic", HALF3, v, "Proved", (cert,), HALF3, HALF3)


def _classify_high_dim(X, P, v, S: TangentSection, search_bound,
                       seed, attempts, line_conf) -> ClassificationResult:
    g, f3 = S.g, S.f3
    if g.is_zero():
        cert = Certificate(
            "cone", "tangent section is a cone over P and no rational "
            "line through P was found", form=f3)
        return ClassificationResult(
            "IsolatedInSection", Fraction(2), v, line_conf, (cert,),
            Fraction(2), Fraction(2))
    if not quadric_has_local_point(g, v):
        cert = Certificate(
            "local-obstruction",
            "the quadric part of the section has no point over the "
            "completion, so rational points cannot accumulate at P",
            form=g)
        return ClassificationResult(
            "IsolatedInSection", Fraction(2), v, line_conf, (cert,),
            Fraction(2), Fraction(2))
    # not isolated: try to certify 3/2 with an explicit nodal cubic
    from .constructions import (NoQuadraticPointFound, WrongRegime,
                                projection_curve)
    certs = []
    rat = _rational_point_on_quadric(g, f3, search_bound)
    if rat is not None:
        certs.append(Certificate(
            "quadric-point", "rational point on the section quadric off "
            "the cubic part: points accumulate at P along its line",
            point=ProjPoint.from_rationals(list(rat))))
    try:
        pc = projection_curve(S, v, attempts=attempts, seed=seed)
        certs.append(Certificate(
            "nodal-cubic", "degree-3 rational curve with a conjugate "
            "node at P", curve=pc.curve))
        return ClassificationResult(
            "Generic", HALF3, v, line_conf, tuple(certs), HALF3, HALF3)
    except (NoQuadraticPointFound, WrongRegime):
        pass
    if certs:
        return ClassificationResult(
            "Generic", HALF3, v, f"HeuristicUpTo({search_bound})",
            tuple(certs), HALF3, Fraction(2))
    cert = Certificate(
        "inconclusive", "quadric is locally soluble but neither a "
        "conjugate pair nor a rational witness was found", form=g)
    return ClassificationResult(
        "Unknown", None, v, f"HeuristicUpTo({search_bound})", (cert,),
        HALF3, Fraction(2))


def _rational_point_on_quadric(g: HomForm, f3: HomForm, bound: int):
    """Small rational zero of g with f3 != 0, or None."""
    m = g.n_vars
    b = min(bound, 12 if m <= 3 else 6)
    for y in _primitive_vectors(m, b):
        if g.evaluate(y) == 0 and f3.evaluate(y) != 0:
            return y
    return None
