"""Reference catalog of cubic hypersurfaces with designated points.

Each entry carries a designated rational point P, a known rational line
on X (never through P unless stated), the expected classification per
place, and the place used for the end-to-end empirical run.  Surfaces
follow one template: F = x2^2*x3 + x2*g(x0,x1) + f3(x0,x1) with
P = [0:0:1:0], tangent plane {x3 = 0}, and f3(1,1) = 0 so that the line
(s, s, 0, t) lies on X.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import ParamCurve
from .forms import parse_form
from .hypersurface import CubicHypersurface
from .localfield import Place
from .points import ProjPoint

HALF3 = Fraction(3, 2)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    form_text: str
    point_text: str
    line_text: Optional[str]       # a rational line on X (certificate of
    #                                the line-existence hypothesis)
    expected: dict                 # place text -> (case, alpha)
    run_place: str                 # place for the end-to-end pipeline
    note: str = ""

    def hypersurface(self) -> CubicHypersurface:
        return CubicHypersurface(parse_form(self.form_text))

    def point(self) -> ProjPoint:
        return ProjPoint.parse(self.point_text)

    def line(self) -> Optional[ParamCurve]:
        return ParamCurve.parse(self.line_text) if self.line_text else None

    def place(self) -> Place:
        return Place.parse(self.run_place)


F3_TAIL = "x0^3 + x0^2*x1 - 2*x1^3"   # vanishes at (1, 1); no rational root

SURFACES = (
    CatalogEntry(
        "fermat-on-line",
        "x0^3 + x1^3 + x2^3 + x3^3", "1:-1:0:0", "s; -s; t; -t",
        {"real": ("OnRationalLine", Fraction(1)),
         "p=5": ("OnRationalLine", Fraction(1)),
         "p=7": ("OnRationalLine", Fraction(1))},
        "real",
        "P on the rational line x0+x1 = x2+x3 = 0"),
    CatalogEntry(
        "split-node",
        f"x2^2*x3 + x0*x1*x2 + {F3_TAIL}", "0:0:1:0", "s; s; 0; t",
        {"real": ("RationalTangentLines", Fraction(2)),
         "p=5": ("RationalTangentLines", Fraction(2)),
         "p=7": ("RationalTangentLines", Fraction(2))},
        "real",
        "tangent cone x0*x1 splits over the rationals"),
    CatalogEntry(
        "real-node",
        f"x2^2*x3 + x2*x0^2 - 2*x2*x1^2 + {F3_TAIL}", "0:0:1:0",
        "s; s; 0; t",
        {"real": ("Generic", HALF3),
         "p=5": ("IsolatedInSection", Fraction(2)),
         "p=7": ("Generic", HALF3)},
        "real",
        "tangent cone x0^2 - 2x1^2: disc 8 is a square in R and Q7, "
        "not in Q5"),
    CatalogEntry(
        "imag-node",
        f"x2^2*x3 + x2*x0^2 + x2*x1^2 + {F3_TAIL}", "0:0:1:0",
        "s; s; 0; t",
        {"real": ("IsolatedInSection", Fraction(2)),
         "p=5": ("Generic", HALF3),
         "p=7": ("IsolatedInSection", Fraction(2))},
        "p=5",
        "tangent cone x0^2 + x1^2: disc -4 is a square in Q5 only"),
    CatalogEntry(
        "on-line-split-section",
        "x2^2*x3 + x0*x1*x2 + x0^2*x1 - x1^3", "0:0:1:0", "s; 0; t; 0",
        {"real": ("OnRationalLine", Fraction(1)),
         "p=5": ("OnRationalLine", Fraction(1)),
         "p=7": ("OnRationalLine", Fraction(1))},
        "real",
        "P on the line x1 = x3 = 0; the tangent section is reducible"),
    CatalogEntry(
        "cusp",
        f"x2^2*x3 + x0^2*x2 + {F3_TAIL}", "0:0:1:0", "s; s; 0; t",
        {"real": ("Generic", HALF3),
         "p=5": ("Generic", HALF3),
         "p=7": ("Generic", HALF3)},
        "real",
        "tangent cone x0^2: cuspidal section, one rational tangent"),
    CatalogEntry(
        "conjugate-lines",
        "x2^2*x3 + x0^2*x2 + x1^2*x2 + x0^2*x1 + x1^3", "0:0:1:0",
        "s; t; -t; 0",
        {"real": ("IsolatedInSection", Fraction(2)),
         "p=5": ("IsolatedInSection", Fraction(2)),
         "p=7": ("IsolatedInSection", Fraction(2))},
        "real",
        "section (x0^2 + x1^2)(x1 + x2): two conjugate lines through P "
        "plus a rational line missing P"),
)

THREEFOLDS = (
    CatalogEntry(
        "fermat-threefold",
        "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", "1:-1:0:0:0",
        "s; -s; t; -t; 0",
        {"real": ("OnRationalLine", Fraction(1)),
         "p=5": ("OnRationalLine", Fraction(1)),
         "p=7": ("OnRationalLine", Fraction(1))},
        "real"),
    CatalogEntry(
        "threefold-generic",
        "x3^2*x4 + x3*x0*x1 - x3*x2^2 + x0^3 + x1^3 + x2^3",
        "0:0:0:1:0", "s; -s; 0; 0; t",
        {"real": ("Generic", HALF3),
         "p=5": ("Generic", HALF3),
         "p=7": ("Generic", HALF3)},
        "real",
        "section quadric x0*x1 - x2^2 is isotropic everywhere"),
    CatalogEntry(
        "threefold-isolated",
        "x3^2*x4 + x3*x0^2 + x3*x1^2 + x3*x2^2 + x0^3 + x1^3 + x2^3",
        "0:0:0:1:0", "s; -s; 0; 0; t",
        {"real": ("IsolatedInSection", Fraction(2)),
         "p=5": ("Generic", HALF3),
         "p=7": ("Generic", HALF3)},
        "p=5",
        "definite section quadric: isolated over R, soluble at odd p"),
)

# the surface catalog drives the heavy empirical criteria; threefolds are
# exercised at smaller height bounds
CATALOG = SURFACES + THREEFOLDS


def get_entry(name: str) -> CatalogEntry:
    for e in CATALOG:
        if e.name == name:
            return e
    raise KeyError(name)
