"""Projective points over Q, Weil heights and v-adic distances.

Points are primitive integer vectors (gcd 1, first nonzero entry
positive).  Distances are exact rationals at every place: the real
distance of integer points is itself rational, and p-adic distances are
integer powers of p.  Exactness keeps min-statistics certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .localfield import Place, valuation


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if not c or all(x == 0 for x in c):
            raise ValueError("projective point needs a nonzero coordinate")
        g = 0
        for x in c:
            g = gcd(g, abs(x))
        c = tuple(x // g for x in c)
        first = next(x for x in c if x != 0)
        if first < 0:
            c = tuple(-x for x in c)
        object.__setattr__(self, "coords", c)

    @staticmethod
    def of(*coords) -> "ProjPoint":
        return ProjPoint(tuple(coords))

    @staticmethod
    def from_rationals(vals) -> "ProjPoint":
        """Canonical point from a vector of Fractions."""
        vals = [Fraction(v) for v in vals]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        return ProjPoint(tuple(int(v * den) for v in vals))

    @staticmethod
    def parse(text: str) -> "ProjPoint":
        return ProjPoint(tuple(int(part) for part in text.split(":")))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return ":".join(str(c) for c in self.coords)

    def __iter__(self):
        return iter(self.coords)


def height(x: ProjPoint) -> int:
    """Multiplicative Weil height of the hyperplane class over Q."""
    return max(abs(c) for c in x.coords)


def dist(x: ProjPoint, y: ProjPoint, place: Place) -> Fraction:
    """Normalized v-adic projective distance, an exact rational in [0,1].

    dist = max_{i<j} |x_i y_j - x_j y_i|_v / (max_i |x_i|_v max_j |y_j|_v).
    """
    if len(x.coords) != len(y.coords):
        raise ValueError("dimension mismatch")
    minors = [x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]
              for i in range(len(x.coords))
              for j in range(i + 1, len(x.coords))]
    if all(m == 0 for m in minors):
        return Fraction(0)
    if place.is_real:
        top = max(abs(m) for m in minors)
        return Fraction(top, height(x) * height(y))
    p = place.p
    # canonical coords are coprime, so the v-adic sup norms are 1
    v = min(valuation(m, p) for m in minors if m != 0)
    return Fraction(1, p ** v) if v >= 0 else Fraction(p ** (-v))


def log_dist(x: ProjPoint, y: ProjPoint, place: Place) -> float:
    """Natural log of dist, handling huge integer numerators exactly."""
    d = dist(x, y, place)
    if d == 0:
        return -math.inf
    return math.log(d.numerator) - math.log(d.denominator)


def delta_exponent(x: ProjPoint, target: ProjPoint, place: Place) -> float:
    """log H(x) / (-log dist(target, x)): the empirical exponent."""
    ld = log_dist(x, target, place)
    if ld == 0:
        return math.inf
    return math.log(height(x)) / (-ld)
