"""Explicit curves of best approximation on cubic hypersurfaces.

Two constructions: the residual conic cut out by the plane through P and
a rational line on X, and the nodal projection cubic obtained by pushing
the line through a conjugate pair of quadratic points on the section
quadric through the inverse of linear projection from P.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .binforms import (binform_gcd, coeff_list, factor_binary_form,
                       is_rational_square, quadratic_discriminant)
from .curves import ParamCurve, branch_data, curve_alpha
from .forms import HomForm, _det
from .hypersurface import CubicHypersurface, TangentSection
from .localfield import (Place, QuadExt, is_square_local,
                         quadric_has_local_point)
from .points import ProjPoint


class PointOnLine(ValueError):
    pass


class EmptyLocalQuadric(ValueError):
    pass


class NoQuadraticPointFound(RuntimeError):
    pass


class WrongRegime(ValueError):
    """The construction's case hypothesis fails (e.g. rational tangents)."""


@dataclass(frozen=True)
class ResidualConicResult:
    kind: str                        # "conic" | "split" | "contained"
    conic: Optional[ParamCurve]      # parametrized over Q when irreducible
    conic_form: Optional[HomForm]    # ternary quadric in plane coordinates
    line_factor: HomForm             # the linear form cutting ell in plane
    plane_basis: tuple               # rows v1, v2, P spanning the plane
    lines: tuple = ()                # rational lines if the conic splits


def residual_conic(X: CubicHypersurface, P: ProjPoint,
                   ell: ParamCurve) -> ResidualConicResult:
    """Intersect the plane through P and the line ell with X and split off
    ell; parametrize the residual conic from P when it is irreducible."""
    if not ell.lies_on(X.form):
        raise ValueError("ell does not lie on X")
    if ell.degree_L != 1:
        raise ValueError("ell must be a line")
    v1 = ell.evaluate(1, 0)
    v2 = ell.evaluate(0, 1)
    if _on_line(P, v1, v2):
        raise PointOnLine(f"{P} lies on the given line")
    basis = (tuple(v1.coords), tuple(v2.coords), tuple(P.coords))
    n1 = X.n_vars
    parts = [HomForm.linear([Fraction(basis[0][i]), Fraction(basis[1][i]),
                             Fraction(basis[2][i])]) for i in range(n1)]
    R = X.form.compose(parts)  # ternary cubic in plane coords u0,u1,u2
    if R.is_zero():
        return ResidualConicResult("contained", None, None,
                                   HomForm.variable(3, 2), basis)
    # ell is {u2 = 0} in plane coordinates, so u2 divides R exactly
    Q = _exact_div_by_var(R, 2)
    assert Q.evaluate([0, 0, 1]) == 0, "P must lie on the residual conic"
    if _gram_det3(Q) != 0:
        conic = _parametrize_conic_from_origin(Q)
        amb = _plane_to_ambient(conic, basis)
        assert amb.degree_L == 2
        assert amb.lies_on(X.form)
        return ResidualConicResult("conic", amb, Q,
                                   HomForm.variable(3, 2), basis)
    # degenerate: the "conic" is a pair of lines (or a double line)
    lines = _split_degenerate_conic(Q, basis)
    return ResidualConicResult("split", None, Q, HomForm.variable(3, 2),
                               basis, tuple(lines))


def _on_line(P: ProjPoint, a: ProjPoint, b: ProjPoint) -> bool:
    from .hypersurface import _rank
    return _rank([list(map(Fraction, a.coords)),
                  list(map(Fraction, b.coords)),
                  list(map(Fraction, P.coords))]) <= 2


def _exact_div_by_var(form: HomForm, i: int) -> HomForm:
    terms = {}
    for exps, c in form.terms.items():
        if exps[i] == 0:
            raise ValueError("form is not divisible by the variable")
        new = list(exps)
        new[i] -= 1
        terms[tuple(new)] = c
    return HomForm(form.n_vars, form.degree - 1, terms)


def _gram_det3(q: HomForm) -> Fraction:
    from .localfield import gram_matrix
    return _det(gram_matrix(q))


def _parametrize_conic_from_origin(Q: HomForm) -> list:
    """Parametrize the smooth conic Q(u0,u1,u2)=0 from its point
    [0:0:1]: chords through the point hit one further point each."""
    lin = Q.coeff_in_last(1)    # linear in u0,u1
    q2 = Q.coeff_in_last(0)     # quadratic in u0,u1
    assert Q.coeff_in_last(2).is_zero()
    assert not lin.is_zero(), "conic singular at the base point"
    s = HomForm.variable(2, 0)
    t = HomForm.variable(2, 1)
    return [s * lin, t * lin, -q2]


def _plane_to_ambient(comps, basis) -> ParamCurve:
    n1 = len(basis[0])
    d = comps[0].degree
    out = []
    for i in range(n1):
        acc = HomForm.zero(2, d)
        for j in range(3):
            c = Fraction(basis[j][i])
            if c != 0 and not comps[j].is_zero():
                acc = acc + comps[j].scale(c)
        out.append(acc)
    return ParamCurve(out)


def _split_degenerate_conic(Q: HomForm, basis) -> list:
    """Rational lines composing a rank <= 2 ternary quadric, mapped to
    the ambient space; empty when the two lines are conjugate."""
    from .localfield import gram_matrix
    from .hypersurface import _rank
    G = gram_matrix(Q)
    # kernel vector
    kern = _nullspace3(G)
    if len(kern) >= 2:
        # rank 1: double line spanned by the kernel
        amb_a = _apply_basis(basis, kern[0])
        amb_b = _apply_basis(basis, kern[1])
        return [ParamCurve.line_through(amb_a, amb_b)]
    k = kern[0]
    # complement: two unit vectors independent from k
    comp = []
    for i in range(3):
        e = [Fraction(int(j == i)) for j in range(3)]
        if _rank([k] + [list(c) for c in comp] + [e]) == 2 + len(comp):
            comp.append(e)
        if len(comp) == 2:
            break
    b1, b2 = comp
    # binary quadric cut on the complement
    qa = _eval_gram(G, b1, b1)
    qb = 2 * _eval_gram(G, b1, b2)
    qc = _eval_gram(G, b2, b2)
    disc = qb * qb - 4 * qa * qc
    if not is_rational_square(disc):
        return []
    from .binforms import sqrt_rational
    r = sqrt_rational(disc)
    lines = []
    if qa != 0:
        roots = [Fraction(-qb + r, 2 * qa), Fraction(-qb - r, 2 * qa)]
        pts = [[b1[i] * rt + b2[i] for i in range(3)] for rt in roots]
    else:
        pts = [[b1[i] for i in range(3)]]
        if qb != 0:
            rt = Fraction(-qc, qb)
            pts.append([b1[i] * rt + b2[i] for i in range(3)])
    for pvec in pts:
        amb_k = _apply_basis(basis, k)
        amb_p = _apply_basis(basis, pvec)
        line = ParamCurve.line_through(amb_k, amb_p)
        if line not in lines:
            lines.append(line)
    return lines


def _apply_basis(basis, vec) -> ProjPoint:
    n1 = len(basis[0])
    return ProjPoint.from_rationals(
        [sum(Fraction(basis[j][i]) * Fraction(vec[j]) for j in range(3))
         for i in range(n1)])


def _eval_gram(G, a, b) -> Fraction:
    return sum(G[i][j] * a[i] * b[j] for i in range(3) for j in range(3))


def _nullspace3(G) -> list:
    A = [list(map(Fraction, row)) for row in G]
    n = 3
    piv_cols = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][col]
        A[row] = [a * inv for a in A[row]]
        for r in range(n):
            if r != row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[row])]
        piv_cols.append(col)
        row += 1
    free = [c for c in range(n) if c not in piv_cols]
    out = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, pc in enumerate(piv_cols):
            vec[pc] = -A[r][fc]
        out.append(vec)
    return out


@dataclass(frozen=True)
class ProjectionCurveResult:
    curve: ParamCurve            # ambient parametrization, degree 3
    section_components: tuple    # the same curve in section coordinates
    node_factor: HomForm         # binary quadric cut by the preimage of P
    quadratic_point: Optional[QuadExt]   # parameter of Q on the chosen
    #                                      line; None for a cusp
    line_in_base: tuple          # (u, w) spanning the line T downstairs


def projection_curve(S: TangentSection, v: Place, attempts: int = 64,
                     seed: int = 0) -> ProjectionCurveResult:
    """Construct the nodal cubic T' = psi(T) through P.

    T is the line joining an irrational conjugate pair on the section
    quadric g = 0 that is defined over the completion at v and avoids
    f3 = 0.  The result has a node at P with conjugate branches, hence
    approximation constant 3/2.
    """
    g, f3 = S.g, S.f3
    if g.is_zero():
        raise WrongRegime("section is a cone over P (g = 0)")
    m = g.n_vars
    if m == 2:
        if not _local_ok_binary(g, v):
            raise EmptyLocalQuadric("g = 0 has no point over the completion")
        disc = quadratic_discriminant(g)
        if disc != 0 and is_rational_square(disc):
            raise WrongRegime("g = 0 has rational points: not the 3/2 case")
        if binform_gcd([g, f3]).degree > 0:
            raise WrongRegime("g divides f3: conjugate lines through P")
        # disc = 0 is the cuspidal section: psi parametrizes it directly,
        # with a single rational branch of multiplicity 2 at P
        return _build_projection(S, g, f3,
                                 (tuple([1, 0]), tuple([0, 1])), g)
    if not quadric_has_local_point(g, v):
        raise EmptyLocalQuadric("g = 0 has no point over the completion")
    rng = random.Random(seed)
    H = 2
    for attempt in range(attempts):
        if attempt and attempt % 8 == 0:
            H *= 2
        u = tuple(rng.randint(-H, H) for _ in range(m))
        w = tuple(rng.randint(-H, H) for _ in range(m))
        if all(c == 0 for c in u) or all(c == 0 for c in w):
            continue
        parts = [HomForm.linear([Fraction(u[i]), Fraction(w[i])])
                 for i in range(m)]
        q = g.compose(parts)
        if q.is_zero() or q.degree != 2:
            continue
        disc = quadratic_discriminant(q)
        if disc == 0 or is_rational_square(disc):
            continue
        if not is_square_local(disc, v).is_square:
            continue
        f3L = f3.compose(parts)
        if f3L.is_zero() or binform_gcd([q, f3L]).degree > 0:
            continue
        return _build_projection(S, q, f3L, (u, w), g, parts)
    raise NoQuadraticPointFound(
        f"no suitable conjugate pair on g = 0 after {attempts} lines")


def _local_ok_binary(g: HomForm, v: Place) -> bool:
    disc = quadratic_discriminant(g)
    if disc == 0:
        return True
    return is_square_local(disc, v).is_square or is_rational_square(disc)


def _build_projection(S: TangentSection, q: HomForm, f3L: HomForm,
                      line, g_orig: HomForm, parts=None):
    """Assemble psi restricted to the chosen line (binary parameter)."""
    m = S.g.n_vars
    if parts is None:
        comps_base = [HomForm.variable(2, i) for i in range(m)]
    else:
        comps_base = parts
    sec_comps = [comps_base[i] * q for i in range(m)] + [-f3L]
    curve = S.embed_curve(sec_comps)
    assert curve.degree_L == 3, "projection curve must have degree 3"
    assert curve.lies_on(S.X.form)
    a, b, c = coeff_list(q)
    if quadratic_discriminant(q) != 0:
        root, _ = QuadExt.quadratic_roots(Fraction(a), Fraction(b),
                                          Fraction(c))
    else:
        root = None
    return ProjectionCurveResult(curve, tuple(sec_comps), q, root,
                                 tuple(tuple(x) for x in line))


def psi_phi_identity_check(S: TangentSection, trials: int = 100,
                           seed: int = 0) -> bool:
    """psi inverts projection from P: on random rational points of the
    section off g = 0, psi(phi(x)) = x projectively."""
    g, f3 = S.g, S.f3
    if g.is_zero():
        raise WrongRegime("projection is not dominant for a cone")
    m = g.n_vars
    rng = random.Random(seed)
    done = 0
    guard = 0
    while done < trials:
        guard += 1
        if guard > 100 * trials:
            raise RuntimeError("could not sample enough section points")
        y = [Fraction(rng.randint(-20, 20)) for _ in range(m)]
        gv = g.evaluate(y)
        if gv == 0:
            continue
        last = -f3.evaluate(y) / gv
        sec_point = y + [last]        # lies on the section by construction
        # phi drops the last coordinate, giving back y; psi sends it up
        psi = [yi * gv for yi in y] + [-f3.evaluate(y)]
        a = ProjPoint.from_rationals(sec_point)
        b = ProjPoint.from_rationals(psi)
        if a != b:
            return False
        done += 1
    return True
