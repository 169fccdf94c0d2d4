"""Binary forms: gcd and factorization over Q for degree <= 4.

Binary forms are :class:`~cubapprox.forms.HomForm` instances with two
variables (printed as x0, x1; by convention the parameters s, t of a
curve).  Factorization uses rational root search for linear factors,
the discriminant for residual quadratics, and the resolvent cubic for
residual quartics.  No general factorization dependency.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from .forms import HomForm


def binform(coeffs) -> HomForm:
    """Build sum(coeffs[i] * s^(d-i) * t^i) from a coefficient list."""
    d = len(coeffs) - 1
    return HomForm(2, d, {(d - i, i): c for i, c in enumerate(coeffs)})


def coeff_list(form: HomForm) -> list:
    """Coefficients [c_0..c_d] with form = sum c_i s^(d-i) t^i."""
    if form.n_vars != 2:
        raise ValueError("not a binary form")
    d = form.degree
    return [form.coeff((d - i, i)) for i in range(d + 1)]


# -- univariate polynomials as coefficient lists (descending degree) ------

def _poly_trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_divmod(a, b):
    a = list(a)
    b = _poly_trim(b)
    if b == [0] or all(c == 0 for c in b):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(c != 0 for c in a):
        a = _poly_trim(a)
        if len(a) < len(b):
            break
        f = a[0] / b[0]
        shift = len(a) - len(b)
        q[len(q) - 1 - shift] += f
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:] if a[0] == 0 else a
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a, b):
    a = _poly_trim([Fraction(c) for c in a])
    b = _poly_trim([Fraction(c) for c in b])
    while any(c != 0 for c in b):
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    if a == [0]:
        return a
    return [c / a[0] for c in a]  # monic


def _poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def binform_gcd(forms) -> HomForm:
    """Monic-normalized gcd of a collection of binary forms.

    Returns the constant form 1 (degree 0) when the forms are coprime.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of all-zero collection")
    # split off powers of t (t = x1): a binary form is t^k * hom(p(s))
    tmin = None
    polys = []
    for f in forms:
        cs = coeff_list(f)  # c_i on s^(d-i) t^i
        lead = next(i for i, c in enumerate(cs) if c != 0)
        # trailing s-degree: form = t^?; powers of t correspond to leading
        # zero coefficients in s-descending order
        k = lead  # t^k divides f  (c_0..c_{k-1} zero)
        tmin = k if tmin is None else min(tmin, k)
        polys.append(cs[lead:])  # univariate in u = s/t? keep s-descending
    g = polys[0]
    for p in polys[1:]:
        g = _poly_gcd(g, p)
        if len(g) == 1:
            break
    # also powers of s: trailing zeros of the dehomogenized polys
    out = binform(g)
    if tmin:
        t = HomForm.variable(2, 1)
        out = out * t ** tmin
    return out.primitive()


def divisors(n: int) -> list:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _int_coeffs(p):
    """Scale a Fraction poly to coprime integer coefficients."""
    den = 1
    for c in p:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = _igcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    return ints


def rational_roots(p) -> list:
    """All rational roots (with multiplicity collapsed) of a poly given
    as descending Fraction coefficients."""
    p = _poly_trim([Fraction(c) for c in p])
    if len(p) == 1:
        return []
    ints = _int_coeffs(p)
    # strip roots at zero
    roots = []
    while ints[-1] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        ints = ints[:-1]
        if len(ints) == 1:
            return roots
    lead, const = ints[0], ints[-1]
    for num in divisors(const):
        for den in divisors(lead):
            for s in (1, -1):
                cand = Fraction(s * num, den)
                if cand in roots:
                    continue
                if _poly_eval([Fraction(c) for c in ints], cand) == 0:
                    roots.append(cand)
    return roots


def is_rational_square(x: Fraction) -> bool:
    from math import isqrt
    if x < 0:
        return False
    a, b = x.numerator, x.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


def sqrt_rational(x: Fraction) -> Fraction:
    from math import isqrt
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))


def _quartic_quadratic_split(p):
    """Try to split a monic quartic with no rational roots into two monic
    rational quadratics via the resolvent cubic.  Returns a pair of
    quadratic coefficient lists or None."""
    _, a, b, c, d = [x / p[0] for x in p]
    # resolvent cubic in y = q + s for (x^2+px+q)(x^2+rx+s)
    resolvent = [Fraction(1), -b, a * c - 4 * d,
                 -(a * a * d - 4 * b * d + c * c)]
    for y in rational_roots(resolvent):
        disc = a * a - 4 * (b - y)
        if not is_rational_square(disc):
            continue
        rt = sqrt_rational(disc)
        pp = (a + rt) / 2
        rr = (a - rt) / 2
        if pp != rr:
            q = (c - pp * y) / (rr - pp)
            s = y - q
        else:
            # q + s = y, qs = d
            disc2 = y * y - 4 * d
            if not is_rational_square(disc2):
                continue
            r2 = sqrt_rational(disc2)
            q = (y + r2) / 2
            s = y - q
        f1 = [Fraction(1), pp, q]
        f2 = [Fraction(1), rr, s]
        # verify
        prod = [Fraction(1), pp + rr, q + s + pp * rr,
                pp * s + q * rr, q * s]
        if prod == [Fraction(1), a, b, c, d]:
            return f1, f2
    return None


def factor_binary_form(form: HomForm) -> list:
    """Factor a nonzero binary form of degree <= 4 over Q.

    Returns a list of (irreducible primitive HomForm, multiplicity); the
    product of the factors equals the input up to a rational scalar.
    """
    if form.n_vars != 2:
        raise ValueError("not a binary form")
    if form.is_zero():
        raise ValueError("cannot factor the zero form")
    if form.degree > 4:
        raise ValueError("factorization limited to degree <= 4")
    factors: list[tuple[HomForm, int]] = []
    cs = coeff_list(form)
    # powers of t (leading s-coefficients zero)
    k = next(i for i, c in enumerate(cs) if c != 0)
    if k:
        factors.append((HomForm.variable(2, 1), k))
    p = cs[k:]
    # powers of s (trailing coefficients zero)
    m = 0
    while p and p[-1] == 0:
        p = p[:-1]
        m += 1
    if m:
        factors.append((HomForm.variable(2, 0), m))
    p = [Fraction(c) for c in p]
    # p is now a poly in s (descending), nonzero constant term
    while len(p) > 1:
        roots = rational_roots(p)
        if roots:
            r = roots[0]
            lin = binform([Fraction(r.denominator), -Fraction(r.numerator)])
            # s = r t  <->  den*s - num*t
            mult = 0
            while True:
                q, rem = _poly_divmod(p, [Fraction(r.denominator),
                                          -Fraction(r.numerator)])
                if rem and any(c != 0 for c in rem):
                    break
                p = q
                mult += 1
            factors.append((lin.primitive(), mult))
            continue
        if len(p) == 3:
            factors.append((binform(p).primitive(), 1))
            p = [p[0] * 0 + 1]
        elif len(p) == 4:
            factors.append((binform(p).primitive(), 1))  # cubic, no rat root
            p = [Fraction(1)]
        elif len(p) == 5:
            split = _quartic_quadratic_split(p)
            if split is None:
                factors.append((binform(p).primitive(), 1))
            else:
                f1, f2 = split
                if f1 == f2:
                    factors.append((binform(f1).primitive(), 2))
                else:
                    for f in split:
                        sub = factor_binary_form(binform(f))
                        factors.extend(sub)
            p = [Fraction(1)]
        else:
            raise AssertionError("unreachable degree")
    # merge repeated factors
    merged: dict[HomForm, int] = {}
    for f, e in factors:
        merged[f] = merged.get(f, 0) + e
    return sorted(merged.items(), key=lambda fe: (fe[0].degree,
                                                  str(fe[0])))


def quadratic_discriminant(form: HomForm) -> Fraction:
    """b^2 - 4ac for the binary quadric a s^2 + b s t + c t^2."""
    if form.n_vars != 2 or form.degree != 2:
        raise ValueError("not a binary quadric")
    a, b, c = coeff_list(form)
    return b * b - 4 * a * c
