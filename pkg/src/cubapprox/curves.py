"""Rational curves given by binary-form parametrizations.

The exact approximation constant of a parametrized rational curve at a
rational point is min over parameter preimages q of d/(r_q * m_q), with
r_q in {0, 1, 2} set by the residue field of q relative to the base and
completed fields.  This module computes that, and generates rational
approximating sequences realizing it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .binforms import (binform, binform_gcd, coeff_list, factor_binary_form,
                       is_rational_square, quadratic_discriminant)
from .forms import HomForm, parse_form
from .localfield import (Place, QuadExt, ZeroInput, binary_form_has_local_root,
                         is_square_local, squarefree_part, valuation)
from .points import ProjPoint, delta_exponent, dist, height

INF = math.inf


class PointNotOnCurve(ValueError):
    pass


class BranchNotInKv(ValueError):
    pass


class ParamCurve:
    """Map P^1 -> P^n by n+1 coprime binary forms of common degree."""

    __slots__ = ("components", "degree_L")

    def __init__(self, components: Sequence[HomForm]):
        comps = list(components)
        if len(comps) < 2:
            raise ValueError("need at least two components")
        degs = {c.degree for c in comps if not c.is_zero()}
        if len(degs) != 1:
            raise ValueError("components must share one degree")
        d = degs.pop()
        comps = [c if not c.is_zero() else HomForm.zero(2, d) for c in comps]
        g = binform_gcd([c for c in comps if not c.is_zero()])
        if g.degree > 0:
            comps = [_binform_exact_div(c, g) for c in comps]
            d -= g.degree
        # integer, collectively coprime, first nonzero leading coeff positive
        den = 1
        for c in comps:
            cc = c.content()
            den = den * cc.denominator // gcd(den, cc.denominator)
        comps = [c.scale(den) for c in comps]
        num = 0
        for c in comps:
            num = gcd(num, c.content().numerator)
        if num > 1:
            comps = [c.scale(Fraction(1, num)) for c in comps]
        lead = next(
            (next(iter(c.terms.values())) for c in comps if not c.is_zero()))
        if lead < 0:
            comps = [-c for c in comps]
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "degree_L", d)

    def __setattr__(self, *a):
        raise AttributeError("ParamCurve is immutable")

    def __eq__(self, other):
        return (isinstance(other, ParamCurve)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    @property
    def ambient_dim(self) -> int:
        return len(self.components) - 1

    def evaluate(self, s, t) -> ProjPoint:
        vals = [c.evaluate([s, t]) for c in self.components]
        if all(v == 0 for v in vals):
            raise ValueError(f"parametrization undefined at [{s}:{t}]")
        return ProjPoint.from_rationals(vals)

    def lies_on(self, form: HomForm) -> bool:
        """Whether the image satisfies form = 0 identically."""
        return form.compose(list(self.components)).is_zero()

    def preimage_system(self, P: ProjPoint) -> HomForm:
        """gcd of the binary forms C_i P_j - C_j P_i; its zeros are the
        parameter preimages of P."""
        if len(P.coords) != len(self.components):
            raise ValueError("ambient dimension mismatch")
        minors = []
        n = len(self.components)
        for i in range(n):
            for j in range(i + 1, n):
                m = (self.components[i].scale(P.coords[j])
                     - self.components[j].scale(P.coords[i]))
                if not m.is_zero():
                    minors.append(m)
        if not minors:
            raise ValueError("degenerate curve")
        return binform_gcd(minors)

    def __str__(self) -> str:
        return "; ".join(_print_st(c) for c in self.components)

    def __repr__(self) -> str:
        return f"ParamCurve('{self}')"

    @staticmethod
    def parse(text: str) -> "ParamCurve":
        parts = [p.strip() for p in text.split(";")]
        forms = []
        degs = []
        for p in parts:
            if p in ("0", "-0", "+0"):
                forms.append(None)
                continue
            f = parse_form(_st_to_x(p), n_vars=2)
            forms.append(f)
            degs.append(f.degree)
        if not degs:
            raise ValueError("all components zero")
        d = degs[0]
        forms = [f if f is not None else HomForm.zero(2, d) for f in forms]
        return ParamCurve(forms)

    @staticmethod
    def line_through(a: ProjPoint, b: ProjPoint) -> "ParamCurve":
        if a == b:
            raise ValueError("need two distinct points")
        comps = [binform([Fraction(x), Fraction(y)])
                 for x, y in zip(a.coords, b.coords)]
        return ParamCurve(comps)


def _st_to_x(text: str) -> str:
    return re.sub(r"\bs\b", "x0", re.sub(r"\bt\b", "x1", text))


def _print_st(form: HomForm) -> str:
    return str(form).replace("x0", "s").replace("x1", "t")


def _binform_exact_div(a: HomForm, b: HomForm) -> HomForm:
    """Exact division of binary forms (b | a required)."""
    from .binforms import _poly_divmod
    if a.is_zero():
        return HomForm.zero(2, a.degree - b.degree)
    ca = coeff_list(a)
    cb = coeff_list(b)
    ka = next(i for i, c in enumerate(ca) if c != 0)
    kb = next(i for i, c in enumerate(cb) if c != 0)
    q, r = _poly_divmod([Fraction(c) for c in ca[ka:]],
                        [Fraction(c) for c in cb[kb:]])
    if any(c != 0 for c in r) or ka < kb:
        raise ValueError("division is not exact")
    out = binform(q)
    if ka - kb:
        out = out * HomForm.variable(2, 1) ** (ka - kb)
    return out


@dataclass(frozen=True)
class BranchDatum:
    """One preimage branch of P under the parametrization."""

    factor: HomForm           # irreducible binary form vanishing at q
    q: object                 # (s, t) Fractions | QuadExt | None (deg >= 3)
    kappa_degree: int
    in_kv: bool
    m_q: int
    r_q: int

    def alpha_contribution(self, degree_L: int):
        if self.r_q == 0:
            return INF
        return Fraction(degree_L, self.r_q * self.m_q)


def branch_data(C: ParamCurve, P: ProjPoint, v: Place) -> list:
    """Branch data at every parameter preimage of P on C."""
    G = C.preimage_system(P)
    if G.degree == 0:
        raise PointNotOnCurve(f"{P} is not on the image of the curve")
    out = []
    for f, mult in factor_binary_form(G):
        deg = f.degree
        if deg == 1:
            a, b = coeff_list(f)  # a s + b t
            q = (Fraction(-b), Fraction(a))
            out.append(BranchDatum(f, q, 1, True, mult, 1))
        elif deg == 2:
            disc = quadratic_discriminant(f)
            in_kv = is_square_local(disc, v).is_square
            a, b, c = coeff_list(f)
            root, conj = QuadExt.quadratic_roots(a, b, c)
            r = 2 if in_kv else 0
            out.append(BranchDatum(f, root, 2, in_kv, mult, r))
            out.append(BranchDatum(f, conj, 2, in_kv, mult, r))
        else:
            in_kv = binary_form_has_local_root(f, v)
            r = 2 if in_kv else 0
            out.append(BranchDatum(f, None, deg, in_kv, mult, r))
    return out


def curve_alpha(C: ParamCurve, P: ProjPoint, v: Place):
    """min over branches of degree_L / (r_q * m_q); math.inf if no branch
    is defined over the completion."""
    data = branch_data(C, P, v)
    best = INF
    for b in data:
        best = min(best, b.alpha_contribution(C.degree_L))
    return best


# -- approximating sequences ----------------------------------------------


@dataclass(frozen=True)
class ApproxSequence:
    points: tuple
    target: ProjPoint
    place: Place
    provenance: str

    def __post_init__(self):
        last = None
        for x in self.points:
            if x == self.target:
                raise ValueError("sequence must avoid the target")
            d = dist(x, self.target, self.place)
            if last is not None and d >= last:
                raise ValueError("distances must strictly decrease")
            last = d

    def deltas(self) -> list:
        return [delta_exponent(x, self.target, self.place)
                for x in self.points]


def _cf_quadratic(A: int, B: int, C: int, count: int) -> list:
    """Partial quotients of (-B + sqrt(B^2-4AC)) / (2A), an irrational
    real quadratic; exact integer arithmetic."""
    D = B * B - 4 * A * C
    if D <= 0 or is_rational_square(Fraction(D)):
        raise ValueError("not a real quadratic irrational")
    P0, Q0 = -B, 2 * A
    if (D - P0 * P0) % Q0 != 0:
        P0 *= abs(Q0)
        D *= Q0 * Q0
        Q0 *= abs(Q0)
    quots = []
    P_, Q_ = P0, Q0
    s = isqrt(D)
    for _ in range(count):
        if Q_ > 0:
            a = (P_ + s) // Q_
        else:
            a = -((P_ + s) // (-Q_) + 1)
        quots.append(a)
        P_ = a * Q_ - P_
        Q_ = (D - P_ * P_) // Q_
    return quots


def _convergents(quots):
    h0, h1 = 1, quots[0]
    k0, k1 = 0, 1
    out = [(h1, k1)]
    for a in quots[1:]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append((h1, k1))
    return out


def _sqrt_mod_pk(a: int, p: int, k: int) -> int:
    """Square root of the unit a mod p^k (a must be a square unit)."""
    if p == 2:
        if a % 8 != 1:
            raise ValueError("not a 2-adic square unit")
        r = 1
        prec = 3
        while prec < k:
            # lift r to mod 2^(prec+1)
            if (r * r - a) % (1 << (prec + 1)) != 0:
                r += 1 << (prec - 1)
            prec += 1
        return r % (1 << k)
    r = _tonelli_shanks(a % p, p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = p ** prec
        r = (r + (a - r * r) * pow(2 * r, -1, mod)) % mod
    return r


def _tonelli_shanks(a: int, p: int) -> int:
    if a % p == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) == 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _rational_reconstruct(u: int, m: int):
    """Small (a, b) with a = b*u (mod m): Euclid on (m, u) stopped near
    sqrt(m).  The p-adic analog of a continued-fraction convergent."""
    bound = isqrt(m)
    r0, r1 = m, u % m
    t0, t1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        t0, t1 = t1, t0 - qq * t1
    return r1, t1


def _quadratic_root_padic(A: Fraction, B: Fraction, C: Fraction, p: int,
                          prec: int) -> Fraction:
    """A root of A u^2 + B u + C in Q_p, as a rational agreeing with it
    to at least p^prec (root assumed to lie in Z_p after clearing)."""
    D = B * B - 4 * A * C
    vD = valuation(D, p)
    if vD % 2 != 0:
        raise ValueError("discriminant has odd valuation")
    unit = D / Fraction(p) ** vD
    k = prec + vD + 4
    mod = p ** k
    un = unit.numerator % mod
    ud = unit.denominator % mod
    a_int = un * pow(ud, -1, mod) % mod
    r = _sqrt_mod_pk(a_int, p, k)
    sqrtD = Fraction(r) * Fraction(p) ** (vD // 2)
    return (-B + sqrtD) / (2 * A)


def sequence_on_curve(C: ParamCurve, b: BranchDatum, P: ProjPoint,
                      v: Place, N: int) -> ApproxSequence:
    """Rational points on C converging v-adically to P along branch b."""
    if not b.in_kv:
        raise BranchNotInKv("branch is not defined over the completion")
    params: list[tuple[Fraction, Fraction]] = []
    if b.kappa_degree == 1:
        s0, t0 = b.q
        if t0 == 0:
            # root at infinity: approach with large affine parameters
            if v.is_real:
                params = [(Fraction(2 ** i), Fraction(1))
                          for i in range(1, N + 1)]
            else:
                # (1 : p^i) tends p-adically to the root (1 : 0)
                params = [(Fraction(1), Fraction(v.p) ** i)
                          for i in range(1, N + 1)]
        else:
            q0 = Fraction(s0, t0)
            if v.is_real:
                params = [(q0 + Fraction(1, 2 ** i), Fraction(1))
                          for i in range(1, N + 1)]
            else:
                params = [(q0 + Fraction(v.p) ** i, Fraction(1))
                          for i in range(1, N + 1)]
    elif b.kappa_degree == 2:
        A, B2, C2 = coeff_list(b.factor)
        ints = [int(x) for x in
                [c * A.denominator * B2.denominator * C2.denominator
                 for c in (A, B2, C2)]]
        if v.is_real:
            quots = _cf_quadratic(ints[0], ints[1], ints[2], N + 2)
            params = [(Fraction(h), Fraction(k))
                      for h, k in _convergents(quots)]
        else:
            p = v.p
            # ensure the root is p-integral; otherwise flip s <-> t
            flip = valuation(Fraction(ints[0]), p) > 0 and ints[2] % p != 0
            a0, b0, c0 = (ints[2], ints[1], ints[0]) if flip else ints
            precs = list(range(4, 4 + 2 * N, 2))
            for prec in precs:
                u = _quadratic_root_padic(Fraction(a0), Fraction(b0),
                                          Fraction(c0), p, prec)
                vu = valuation(u, p) if u != 0 else 0
                if u != 0 and vu < 0:
                    raise ValueError("root not p-integral after flip")
                m = p ** prec
                un = u.numerator % m
                ud = pow(u.denominator, -1, m)
                ui = un * ud % m
                aa, bb = _rational_reconstruct(ui, m)
                if bb == 0:
                    continue
                if flip:
                    params.append((Fraction(bb), Fraction(aa)))
                else:
                    params.append((Fraction(aa), Fraction(bb)))
    else:
        raise ValueError("sequence generation supports residue degree <= 2")

    pts = []
    last = None
    for s, t in params:
        try:
            x = C.evaluate(s, t)
        except ValueError:
            continue
        if x == P:
            continue
        d = dist(x, P, v)
        if d == 0:
            continue
        if last is not None and d >= last:
            continue
        pts.append(x)
        last = d
    prov = (f"curve degree {C.degree_L}, branch {b.factor} "
            f"(kappa deg {b.kappa_degree}, m={b.m_q}), place {v}")
    return ApproxSequence(tuple(pts), P, v, prov)
