"""Cubic hypersurfaces, tangent sections and line search.

The tangent section at a smooth rational point P is normalized to the
shape f3 + y_last * g = 0 inside the tangent hyperplane, with f3 a cubic
and g a quadric in the remaining variables; lines on X through P
correspond exactly to common zeros of (g, f3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .binforms import binform_gcd, factor_binary_form, quadratic_discriminant
from .curves import ParamCurve
from .forms import HomForm, kernel_basis, mat_inverse, mat_vec
from .localfield import Place, is_square_local, quadric_has_local_point
from .points import ProjPoint


class PointNotOnX(ValueError):
    pass


class SingularAtP(ValueError):
    pass


class ReducibleForm(ValueError):
    pass


class WorseThanNode(ValueError):
    """Tangent cone of the section vanishes identically at P."""


def _generic_frames(n: int) -> list:
    """The identity plus two fixed generic unimodular frames; candidate
    search runs in each frame so that degenerate coordinate restrictions
    in one frame are caught in another."""
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    frames = [eye]
    for seed in (1, 2):
        R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        k = seed
        for i in range(n):
            for j in range(n):
                if i != j:
                    k = (k * 7 + 3) % 11
                    R[i][j] = Fraction(k - 5)
        from .forms import _det
        if _det(R) != 0:
            frames.append(R)
    return frames


def _linear_factors_in_frame(form: HomForm) -> list:
    """Linear factors found via coordinate-line specialization: for a
    factor with first nonzero coefficient at x_{i0} (scaled to 1), every
    other coefficient is minus a rational root of the restriction of the
    form to the line t*e_{i0} + e_j."""
    from .binforms import rational_roots
    n = form.n_vars
    found = []
    for i0 in range(n):
        cand_sets = []
        degenerate = False
        for j in range(n):
            if j == i0:
                continue
            base = [Fraction(0)] * n
            base[j] = Fraction(1)
            coeffs = _restrict_to_line(form, i0, base)
            if all(c == 0 for c in coeffs):
                degenerate = True
                break
            cands = sorted({-r for r in rational_roots(coeffs)})
            if not cands:
                cand_sets = None
                break
            cand_sets.append((j, cands))
        if degenerate or cand_sets is None:
            continue
        for combo in itertools.product(*[cs for _, cs in cand_sets]):
            coeffs = [Fraction(0)] * n
            coeffs[i0] = Fraction(1)
            for (j, _), c in zip(cand_sets, combo):
                coeffs[j] = c
            ell = HomForm.linear(coeffs)
            if _divides_linear(ell, form):
                ell = ell.primitive()
                if ell not in found:
                    found.append(ell)
    return found


def linear_factors(form: HomForm) -> list:
    """Rational linear factors of a homogeneous form.

    Specialization search in several generic frames; each candidate is
    certified by exact division, so every returned factor is genuine.
    """
    n = form.n_vars
    found = []
    for R in _generic_frames(n):
        rotated = form.substitute_linear(R)
        from .forms import mat_inverse as _mi
        Rinv = _mi(R)
        for ell in _linear_factors_in_frame(rotated):
            # ell(y) divides form(R y); map back: ell(Rinv x)
            back = ell.substitute_linear(Rinv).primitive()
            if back not in found and _divides_linear(back, form):
                found.append(back)
    return found


def _restrict_to_line(form: HomForm, i0: int, base) -> list:
    """Coefficients (descending in t) of t -> form(t e_{i0} + base)."""
    d = form.degree
    out = [Fraction(0)] * (d + 1)
    for exps, c in form.terms.items():
        e0 = exps[i0]
        term = c
        skip = False
        for j, e in enumerate(exps):
            if j == i0 or e == 0:
                continue
            if base[j] == 0:
                skip = True
                break
            term *= base[j] ** e
        if not skip:
            out[d - e0] += term
    return out


def _divides_linear(ell: HomForm, form: HomForm) -> bool:
    """Whether the linear form ell divides form (substitute the solved
    variable and check for zero)."""
    n = form.n_vars
    piv = next(i for i in range(n) if ell.coeff(
        tuple(1 if j == i else 0 for j in range(n))) != 0)
    cpiv = ell.coeff(tuple(1 if j == piv else 0 for j in range(n)))
    # x_piv = -(sum_{j != piv} a_j x_j)/a_piv ; build substitution parts
    parts = []
    for i in range(n):
        if i != piv:
            parts.append(HomForm.variable(n, i))
        else:
            coeffs = [Fraction(0)] * n
            for j in range(n):
                if j == piv:
                    continue
                aj = ell.coeff(tuple(1 if m == j else 0 for m in range(n)))
                coeffs[j] = -aj / cpiv
            parts.append(HomForm.linear(coeffs))
    return form.compose(parts).is_zero()


@dataclass(frozen=True)
class CubicHypersurface:
    form: HomForm
    smoothness_status: str = "AssumedSmooth"

    def __post_init__(self):
        if self.form.degree != 3:
            raise ValueError("form must be a cubic")
        if self.form.n_vars < 4:
            raise ValueError("need a hypersurface in P^3 or higher")
        if self.form.is_zero():
            raise ValueError("zero form")
        if linear_factors(self.form):
            raise ReducibleForm("cubic form has a rational linear factor")
        object.__setattr__(self, "form", self.form.primitive())

    @property
    def n_vars(self) -> int:
        return self.form.n_vars

    @property
    def dim(self) -> int:
        return self.form.n_vars - 2

    def contains(self, P: ProjPoint) -> bool:
        return self.form.evaluate(list(P.coords)) == 0

    def gradient_at(self, P: ProjPoint) -> list:
        return [d.evaluate(list(P.coords)) for d in self.form.gradient()]

    def is_smooth_at(self, P: ProjPoint) -> bool:
        return any(g != 0 for g in self.gradient_at(P))

    def singular_points_search(self, bound: int) -> list:
        """Rational singular points of height <= bound (bounded search)."""
        grads = self.form.gradient()
        n = self.n_vars
        out = []
        for coords in itertools.product(range(-bound, bound + 1), repeat=n):
            if all(c == 0 for c in coords):
                continue
            first = next(c for c in coords if c != 0)
            if first < 0:
                continue
            if self.form.evaluate(coords) != 0:
                continue
            if all(g.evaluate(coords) == 0 for g in grads):
                pt = ProjPoint(coords)
                if pt not in out:
                    out.append(pt)
        return out


@dataclass(frozen=True)
class TangentSection:
    """X cap T_P in normalized coordinates: f3(y') + y_last * g(y') = 0."""

    X: CubicHypersurface
    P: ProjPoint
    ambient_change: tuple      # (n+1)x(n+1) matrix, columns = new frame
    ambient_change_inv: tuple
    section: HomForm           # form in n variables y_0..y_{n-1}
    f3: HomForm                # degree 3 in n-1 variables
    g: HomForm                 # degree 2 in n-1 variables

    @property
    def tangent_form(self) -> HomForm:
        """The linear form cutting the tangent hyperplane in P^n."""
        return HomForm.linear(self.X.gradient_at(self.P)).primitive()

    def section_to_ambient_matrix(self) -> list:
        """Columns mapping section coords y_0..y_{n-1} into P^n."""
        M = self.ambient_change
        return [[M[i][j] for j in range(self.X.n_vars - 1)]
                for i in range(self.X.n_vars)]

    def embed_point(self, y: Sequence[Fraction]) -> ProjPoint:
        vec = [sum(Fraction(self.ambient_change[i][j]) * Fraction(y[j])
                   for j in range(len(y)))
               for i in range(self.X.n_vars)]
        return ProjPoint.from_rationals(vec)

    def embed_curve(self, comps: Sequence[HomForm]) -> ParamCurve:
        """Map a curve in section coordinates to ambient P^n."""
        n1 = self.X.n_vars
        d = comps[0].degree
        out = []
        for i in range(n1):
            acc = HomForm.zero(2, d)
            for j, c in enumerate(comps):
                coef = Fraction(self.ambient_change[i][j])
                if coef != 0 and not c.is_zero():
                    acc = acc + c.scale(coef)
            out.append(acc)
        return ParamCurve(out)


def tangent_section(X: CubicHypersurface, P: ProjPoint) -> TangentSection:
    """Normalize coordinates so P = [0:...:0:1] in its tangent hyperplane
    and split the section into (f3, g)."""
    if not X.contains(P):
        raise PointNotOnX(f"{P} does not satisfy the cubic")
    grad = X.gradient_at(P)
    if all(gc == 0 for gc in grad):
        raise SingularAtP(f"X is singular at {P}")
    n1 = X.n_vars
    # basis of the tangent hyperplane containing P, P last
    kern = kernel_basis(grad)
    chosen = []
    pvec = [Fraction(c) for c in P.coords]
    basis_rows = [pvec]
    for vec in kern:
        if _rank(basis_rows + [vec]) > len(basis_rows):
            basis_rows.append(vec)
            chosen.append(vec)
        if len(chosen) == n1 - 2:
            break
    assert len(chosen) == n1 - 2
    piv = next(i for i in range(n1) if grad[i] != 0)
    w = [Fraction(int(i == piv)) for i in range(n1)]
    cols = chosen + [pvec, w]
    M = [[cols[j][i] for j in range(n1)] for i in range(n1)]
    Fsub = X.form.substitute_linear(M)
    section = Fsub.eliminate_last()       # n1-1 variables y_0..y_{n-2}
    # at P = [0:...:0:1] in section coords the cubic and quadric terms in
    # y_last must vanish (P on X; hyperplane tangent at P)
    assert section.coeff_in_last(3).is_zero()
    g = section.coeff_in_last(1)
    f3 = section.coeff_in_last(0)
    two = section.coeff_in_last(2)
    assert two.is_zero(), "section is not singular at P"
    Minv = mat_inverse(M)
    return TangentSection(X, P,
                          tuple(tuple(r) for r in M),
                          tuple(tuple(r) for r in Minv),
                          section, f3, g)


def _rank(rows) -> int:
    A = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(A[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][col]
        A[rank] = [a * inv for a in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def line_from_direction(S: TangentSection, direction) -> ParamCurve:
    """Ambient line through P with tangent-space direction [y'] (a common
    zero of (g, f3))."""
    n1 = S.X.n_vars
    y = list(direction) + [Fraction(0)]
    dir_amb = mat_vec([list(r) for r in S.ambient_change], y)
    a = ProjPoint(tuple(S.P.coords))
    b = ProjPoint.from_rationals(dir_amb)
    line = ParamCurve.line_through(a, b)
    assert line.lies_on(S.X.form)
    return line


def lines_through_point(X: CubicHypersurface, P: ProjPoint,
                        search_bound: int = 100,
                        S: Optional[TangentSection] = None):
    """Rational lines on X through P.

    Returns (lines, exhaustive).  For surfaces the computation is exact;
    for higher dimension, rational common zeros of (g, f3) are searched
    up to the given height bound unless a definiteness certificate rules
    them out entirely.
    """
    if S is None:
        S = tangent_section(X, P)
    g, f3 = S.g, S.f3
    m = f3.n_vars
    lines = []
    if m == 2:
        system = [f for f in (g, f3) if not f.is_zero()]
        G = binform_gcd(system)
        roots = []
        if G.degree > 0:
            for f, _ in factor_binary_form(G):
                if f.degree == 1:
                    from .binforms import coeff_list
                    a, b = coeff_list(f)
                    roots.append((Fraction(-b), Fraction(a)))
        for r in roots:
            lines.append(line_from_direction(S, r))
        return sorted(lines, key=str), True
    # higher dimension: exhaustive only via local obstruction
    exhaustive = False
    if not g.is_zero() and not quadric_has_local_point(g, Place.real()):
        return [], True
    seen = set()
    for y in _common_zero_search(g, f3, search_bound):
        line = line_from_direction(S, [Fraction(c) for c in y])
        if line not in seen:
            seen.add(line)
            lines.append(line)
    return sorted(lines, key=str), exhaustive


def _common_zero_search(g: HomForm, f3: HomForm, bound: int):
    """Primitive common integer zeros of (g, f3) up to the height bound,
    vectorized over the last coordinate."""
    import numpy as np
    from math import gcd
    m = f3.n_vars
    rng = np.arange(-bound, bound + 1, dtype=np.int64)

    def _eval(form, prefix):
        acc = None
        for exps, c in form.terms.items():
            term = np.int64(int(c))
            for val, e in zip(list(prefix) + [rng], exps):
                if e:
                    term = term * val ** e
            acc = term if acc is None else acc + term
        if acc is None:
            return np.zeros_like(rng)
        return np.broadcast_to(acc, rng.shape)

    forms = [f.primitive() for f in (g, f3) if not f.is_zero()]
    for prefix in itertools.product(range(-bound, bound + 1),
                                    repeat=m - 1):
        mask = np.ones(rng.shape, dtype=bool)
        for f in forms:
            mask &= _eval(f, [np.int64(c) for c in prefix]) == 0
        for last in rng[mask]:
            coords = tuple(prefix) + (int(last),)
            if all(c == 0 for c in coords):
                continue
            first = next(c for c in coords if c != 0)
            if first < 0:
                continue
            h = 0
            for c in coords:
                h = gcd(h, abs(c))
            if h == 1:
                yield coords


def _primitive_vectors(m: int, bound: int):
    from math import gcd
    for coords in itertools.product(range(-bound, bound + 1), repeat=m):
        if all(c == 0 for c in coords):
            continue
        first = next(c for c in coords if c != 0)
        if first < 0:
            continue
        g = 0
        for c in coords:
            g = gcd(g, abs(c))
        if g != 1:
            continue
        yield coords


@dataclass(frozen=True)
class TangentConeReport:
    shape: str                 # SplitRational | SplitQuadraticInKv |
    #                            NonSplitOverKv | DoubleLine
    quadric: HomForm
    discriminant: Fraction
    factors: tuple


def tangent_cone_analysis(S: TangentSection, v: Place) -> TangentConeReport:
    """Classify the tangent directions of the surface section at P."""
    if S.f3.n_vars != 2:
        raise ValueError("tangent cone analysis applies to surfaces")
    g = S.g
    if g.is_zero():
        raise WorseThanNode("section has zero quadric part at P")
    disc = quadratic_discriminant(g)
    factors = tuple(factor_binary_form(g))
    if disc == 0:
        shape = "DoubleLine"
    elif any(f.degree == 1 for f, _ in factors):
        shape = "SplitRational"
    elif is_square_local(disc, v).is_square:
        shape = "SplitQuadraticInKv"
    else:
        shape = "NonSplitOverKv"
    return TangentConeReport(shape, g, disc, factors)
