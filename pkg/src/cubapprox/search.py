"""Bounded-height point enumeration and empirical exponent estimation.

The enumerator fixes all but the last coordinate, sieves the prefix with
lookup tables mod small numbers, and solves the remaining cubic in the
last coordinate exactly.  A separate full-grid enumerator with no shared
machinery serves as a correctness oracle on small bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

import numpy as np

from .forms import HomForm
from .hypersurface import CubicHypersurface
from .localfield import Place
from .points import ProjPoint, delta_exponent, dist, height, log_dist

PREFILTER_MODULI = (7, 9, 13)


class NoApproximants(ValueError):
    """No enumerated point fell within the largest requested radius."""


@dataclass(frozen=True)
class PointStream:
    hypersurface: CubicHypersurface
    height_bound: int
    filter_form: Optional[HomForm]
    points: Tuple[ProjPoint, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _integer_form(form: HomForm) -> HomForm:
    f = form.primitive()
    assert all(c.denominator == 1 for c in f.terms.values())
    return f


def _coeff_arrays(form: HomForm, arrays) -> np.ndarray:
    """Evaluate an integer form on numpy arrays per variable."""
    total = None
    for exps, c in form.terms.items():
        term = np.int64(int(c))
        for arr, e in zip(arrays, exps):
            if e:
                term = term * arr ** e
        total = term if total is None else total + term
    if total is None:
        return np.zeros_like(arrays[0])
    return np.broadcast_to(total, np.broadcast_shapes(
        *[a.shape for a in arrays])).copy() if np.ndim(total) == 0 else total


def _prefilter_tables(form: HomForm, moduli=PREFILTER_MODULI):
    """For each modulus m, a boolean table over prefix residues telling
    whether the cubic in the last coordinate has any root mod m."""
    n1 = form.n_vars
    tables = {}
    for m in moduli:
        axes = np.meshgrid(*[np.arange(m)] * (n1 - 1), indexing="ij")
        ok = np.zeros([m] * (n1 - 1), dtype=bool)
        coeffs = [(_coeff_arrays(form.coeff_in_last(k),
                                 [a.astype(np.int64) for a in axes]) % m)
                  for k in range(4)]
        for d in range(m):
            val = np.zeros_like(ok, dtype=np.int64)
            for k in range(4):
                val = val + coeffs[k] * pow(d, k, m)
            ok |= (val % m) == 0
        tables[m] = ok
    return tables


def enumerate_points(X: CubicHypersurface, B: int,
                     filter_form: Optional[HomForm] = None) -> PointStream:
    """All canonical rational points of X with height <= B, in
    lexicographic coordinate order."""
    if B < 1:
        raise ValueError("height bound must be positive")
    form = _integer_form(X.form)
    n1 = form.n_vars
    tables = _prefilter_tables(form)
    coeff_forms = [form.coeff_in_last(k) for k in range(4)]
    rng = np.arange(-B, B + 1, dtype=np.int64)
    found = set()
    # prefix = first n1-2 coordinates; y = coordinate n1-2 vectorized
    for prefix in itertools.product(range(-B, B + 1), repeat=n1 - 2):
        mask = np.ones(rng.shape, dtype=bool)
        for m, table in tables.items():
            idx = tuple([c % m for c in prefix] + [rng % m])
            mask &= table[idx]
        ys = rng[mask]
        if ys.size == 0:
            continue
        pref_arrays = [np.int64(c) for c in prefix]
        cks = [np.broadcast_to(_coeff_arrays(cf, pref_arrays + [ys]),
                               ys.shape).astype(np.int64)[:, None]
               for cf in coeff_forms]
        c0, c1, c2, c3 = cks
        z = rng[None, :]
        vals = ((c3 * z + c2) * z + c1) * z + c0
        ii, jj = np.nonzero(vals == 0)
        for i, j in zip(ii, jj):
            coords = tuple(prefix) + (int(ys[i]), int(rng[j]))
            _maybe_add(found, coords, filter_form)
    pts = sorted(found, key=lambda p: p.coords)
    return PointStream(X, B, filter_form, tuple(pts))


def _maybe_add(found, coords, filter_form):
    if all(c == 0 for c in coords):
        return
    g = 0
    for c in coords:
        g = gcd(g, abs(c))
    if g != 1:
        return
    first = next(c for c in coords if c != 0)
    if first < 0:
        return
    if filter_form is not None and filter_form.evaluate(coords) != 0:
        return
    found.add(ProjPoint(coords))


def naive_enumerate(X: CubicHypersurface, B: int,
                    filter_form: Optional[HomForm] = None) -> PointStream:
    """Oracle enumerator: evaluate the form on the full coordinate grid
    with no sieving and no root solving."""
    form = _integer_form(X.form)
    n1 = form.n_vars
    rng = np.arange(-B, B + 1, dtype=np.int64)
    found = set()
    for prefix in itertools.product(range(-B, B + 1), repeat=n1 - 2):
        y = rng[:, None]
        z = rng[None, :]
        arrays = [np.int64(c) for c in prefix] + [y, z]
        vals = None
        for exps, coef in form.terms.items():
            term = np.int64(int(coef))
            for arr, e in zip(arrays, exps):
                if e:
                    term = term * arr ** e
            vals = term if vals is None else vals + term
        ii, jj = np.nonzero(np.broadcast_to(vals, (rng.size, rng.size)) == 0)
        for i, j in zip(ii, jj):
            _maybe_add(found, tuple(prefix) + (int(rng[i]), int(rng[j])),
                       filter_form)
    pts = sorted(found, key=lambda p: p.coords)
    return PointStream(X, B, filter_form, tuple(pts))


@dataclass(frozen=True)
class AlphaEstimate:
    target: ProjPoint
    place: Place
    rows: tuple            # (epsilon: Fraction, alpha_hat: float,
    #                         witnesses: int, best: ProjPoint)
    extrapolated: float
    height_bound_used: int


def empirical_alpha(stream: PointStream, P: ProjPoint, v: Place,
                    epsilons: Optional[Sequence[Fraction]] = None
                    ) -> AlphaEstimate:
    """Envelope of the empirical exponent delta = log H / (-log dist)
    over shrinking distance radii."""
    data = []
    for x in stream:
        if x == P:
            continue
        d = dist(x, P, v)
        if d == 0:
            continue
        data.append((d, delta_exponent(x, P, v), x))
    if epsilons is None:
        if not data:
            raise NoApproximants("no points distinct from the target")
        dmin = min(d for d, _, _ in data)
        base = 2 if v.is_real else v.p
        j = 0
        epsilons = []
        while Fraction(1, base ** j) >= dmin and j <= 200:
            epsilons.append(Fraction(1, base ** j))
            j += 1
        if not epsilons:
            epsilons = [Fraction(1)]
    rows = []
    for eps in epsilons:
        within = [(dd, de, x) for dd, de, x in data if dd <= eps]
        if not within:
            continue
        best = min(within, key=lambda t: t[1])
        rows.append((Fraction(eps), best[1], len(within), best[2]))
    if not rows:
        raise NoApproximants(
            f"no points within the largest radius {max(epsilons)}")
    extrapolated = None
    for eps, alpha_hat, nwit, _ in reversed(rows):
        if nwit >= 3:
            extrapolated = alpha_hat
            break
    if extrapolated is None:
        extrapolated = rows[-1][1]
    return AlphaEstimate(P, v, tuple(rows), extrapolated,
                         stream.height_bound)


@dataclass(frozen=True)
class LiouvilleReport:
    gamma: Fraction
    excluded: str
    min_product: float
    trend: float
    per_bound: tuple       # (B, min log-product value as float)


def liouville_check(X: CubicHypersurface, P: ProjPoint, v: Place,
                    gamma: Fraction, bounds: Sequence[int] = (25, 50, 100),
                    excluded_forms: Sequence[HomForm] = (),
                    stream: Optional[PointStream] = None) -> LiouvilleReport:
    """Empirical floor of height * dist^gamma off an excluded locus.

    A trend slope near zero across growing height bounds is the expected
    signature of a positive lower bound; steady decay signals trouble.
    """
    bounds = sorted(bounds)
    if stream is None or stream.height_bound < bounds[-1]:
        stream = enumerate_points(X, bounds[-1])
    per_bound = []
    gamma = Fraction(gamma)
    for B in bounds:
        best = None
        for x in stream:
            if height(x) > B or x == P:
                continue
            if any(f.evaluate(list(x.coords)) == 0 for f in excluded_forms):
                continue
            d = dist(x, P, v)
            if d == 0:
                continue
            val = math.log(height(x)) + float(gamma) * log_dist(x, P, v)
            if best is None or val < best:
                best = val
        if best is not None:
            per_bound.append((B, best))
    if not per_bound:
        raise NoApproximants("no points off the excluded locus")
    if len(per_bound) >= 2:
        xs = np.log([b for b, _ in per_bound])
        ys = np.array([m for _, m in per_bound])
        trend = float(np.polyfit(xs, ys, 1)[0])
    else:
        trend = 0.0
    desc = "; ".join(str(f) for f in excluded_forms) or "none"
    return LiouvilleReport(gamma, desc, math.exp(per_bound[-1][1]),
                           trend, tuple(per_bound))
