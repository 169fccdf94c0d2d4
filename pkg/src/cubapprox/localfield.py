"""Places of Q and local rationality tests.

Everything here is exact: p-adic questions reduce to valuations and
square classes, real questions to signs.  The quadratic-form solvability
tests (Hilbert symbols, diagonalization) decide whether a quadric has
points over R or Q_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .forms import HomForm


class ZeroInput(ValueError):
    """Raised when a square test receives zero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Place:
    """The real place or a p-adic place of Q."""

    p: int | None = None  # None means the real place

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    @staticmethod
    def real() -> "Place":
        return Place(None)

    @staticmethod
    def padic(p: int) -> "Place":
        return Place(p)

    @staticmethod
    def parse(text: str) -> "Place":
        text = text.strip().lower()
        if text in ("real", "inf", "oo"):
            return Place.real()
        if text.startswith("p="):
            return Place.padic(int(text[2:]))
        raise ValueError(f"bad place {text!r}; use 'real' or 'p=5'")

    def __str__(self) -> str:
        return "real" if self.is_real else f"p={self.p}"


REAL = Place.real()


def valuation(x: Fraction | int, p: int) -> int:
    """p-adic valuation; raises on zero."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x: Fraction, p: int) -> Fraction:
    return Fraction(x) / Fraction(p) ** valuation(x, p)


@dataclass(frozen=True)
class LocalSquareVerdict:
    place: Place
    value: Fraction
    is_square: bool


def is_square_local(value, place: Place) -> LocalSquareVerdict:
    """Whether a nonzero rational is a square in the completion at place."""
    value = Fraction(value)
    if value == 0:
        raise ZeroInput("square test on zero")
    if place.is_real:
        return LocalSquareVerdict(place, value, value > 0)
    p = place.p
    v = valuation(value, p)
    if v % 2 != 0:
        return LocalSquareVerdict(place, value, False)
    u = unit_part(value, p)
    if p == 2:
        # odd unit is a 2-adic square iff it is 1 mod 8
        num = u.numerator % 8
        den = u.denominator % 8
        ok = (num * pow(den, -1, 8)) % 8 == 1
    else:
        un = u.numerator % p
        ud = u.denominator % p
        a = (un * pow(ud, -1, p)) % p
        ok = pow(a, (p - 1) // 2, p) == 1
    return LocalSquareVerdict(place, value, ok)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, place: Place) -> int:
    """The Hilbert symbol (a, b)_v in {1, -1} for nonzero rationals."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    al = valuation(a, p)
    be = valuation(b, p)
    u = unit_part(a, p)
    w = unit_part(b, p)
    # reduce the units to integers mod p (or mod 8)
    if p != 2:
        ui = (u.numerator * pow(u.denominator, -1, p)) % p
        wi = (w.numerator * pow(w.denominator, -1, p)) % p
        eps = (p - 1) // 2
        sign = (-1) ** (al * be * eps)
        return sign * legendre(ui, p) ** be * legendre(wi, p) ** al
    ui = (u.numerator * pow(u.denominator, -1, 8)) % 8
    wi = (w.numerator * pow(w.denominator, -1, 8)) % 8
    e_u = (ui - 1) // 2 % 2
    e_w = (wi - 1) // 2 % 2
    o_u = (ui * ui - 1) // 8 % 2
    o_w = (wi * wi - 1) // 8 % 2
    return (-1) ** (e_u * e_w + al * o_w + be * o_u)


def squarefree_part(x: Fraction | int) -> int:
    """Squarefree integer d with x = d * (rational square)."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("squarefree part of zero")
    n = x.numerator * x.denominator  # same square class
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    i = 2
    while i * i <= n:
        if n % i == 0:
            e = 0
            while n % i == 0:
                n //= i
                e += 1
            if e % 2:
                d *= i
        i += 1
    return sign * d * n


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*sqrt(delta) of a real or imaginary quadratic field."""

    delta: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.delta in (0, 1) or squarefree_part(self.delta) != self.delta:
            raise ValueError("delta must be squarefree and != 0, 1")

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.delta, self.a, -self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.delta})"

    @staticmethod
    def quadratic_roots(a: Fraction, b: Fraction, c: Fraction):
        """Roots of a x^2 + b x + c with irrational discriminant, as a
        conjugate QuadExt pair."""
        disc = b * b - 4 * a * c
        d = squarefree_part(disc)
        # disc = d * r^2
        from .binforms import sqrt_rational
        r = sqrt_rational(disc / d)
        root = QuadExt(d, -b / (2 * a), r / (2 * a))
        return root, root.conjugate()


# -- quadratic forms: diagonalization and local solvability ----------------


def gram_matrix(q: HomForm) -> list:
    """Symmetric Gram matrix (Fraction entries) of a quadratic form."""
    if q.degree != 2:
        raise ValueError("not a quadratic form")
    n = q.n_vars
    G = [[Fraction(0)] * n for _ in range(n)]
    for exps, c in q.terms.items():
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        i, j = idx
        if i == j:
            G[i][i] = c
        else:
            G[i][j] = G[j][i] = c / 2
    return G


def diagonalize(q: HomForm) -> list:
    """Diagonal entries of a form Q-congruent to q (zeros kept)."""
    G = gram_matrix(q)
    n = len(G)
    diag = []
    rows = list(range(n))
    while G:
        m = len(G)
        # find a nonzero diagonal entry, or create one
        piv = next((i for i in range(m) if G[i][i] != 0), None)
        if piv is None:
            # look for off-diagonal nonzero; x_i -> x_i + x_j creates one
            hit = None
            for i in range(m):
                for j in range(i + 1, m):
                    if G[i][j] != 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                diag.extend([Fraction(0)] * m)
                break
            i, j = hit
            for r in range(m):
                G[r][i] += G[r][j]
            for c in range(m):
                G[i][c] += G[j][c]
            piv = i
        if piv != 0:
            G[0], G[piv] = G[piv], G[0]
            for row in G:
                row[0], row[piv] = row[piv], row[0]
        a = G[0][0]
        diag.append(a)
        # clear first row/column
        new = []
        for i in range(1, m):
            f = G[i][0] / a
            new.append([G[i][j] - f * G[0][j] for j in range(1, m)])
        G = new
    return diag


def quadric_has_local_point(q: HomForm, place: Place) -> bool:
    """Whether the projective quadric q = 0 has a point over the
    completion at place (nontrivial zero of the form)."""
    diag = [d for d in diagonalize(q)]
    if any(d == 0 for d in diag):
        return True  # rank-deficient: rational kernel vector
    n = len(diag)
    if n <= 1:
        return False
    if place.is_real:
        return any(d > 0 for d in diag) and any(d < 0 for d in diag)
    if n == 2:
        a, b = diag
        return is_square_local(-a * b, place).is_square
    if n == 3:
        a, b, c = diag
        return hilbert_symbol(-a * c, -b * c, place) == 1
    if n == 4:
        a, b, c, d = diag
        disc = a * b * c * d
        if not is_square_local(disc, place).is_square:
            return True
        eps = 1
        for i in range(4):
            for j in range(i + 1, 4):
                eps *= hilbert_symbol(diag[i], diag[j], place)
        return eps != -hilbert_symbol(-1, -1, place)
    return True  # rank >= 5 over Q_p is always isotropic


# -- p-adic roots of integer polynomials ----------------------------------


def _int_poly(p_coeffs):
    from .binforms import _int_coeffs
    return _int_coeffs([Fraction(c) for c in p_coeffs])


def _has_zp_root(coeffs, p: int, depth: int = 40) -> bool:
    """Whether an integer poly (descending coeffs) has a root in Z_p.

    Recursive Hensel with blow-ups at singular residues; depth bounds the
    recursion (polys here are separable, so this terminates long before).
    """
    if depth == 0:
        return False
    deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]

    def ev(cs, x, mod):
        acc = 0
        for c in cs:
            acc = (acc * x + c) % mod
        return acc

    for r in range(p):
        if ev(coeffs, r, p) != 0:
            continue
        if ev(deriv, r, p) != 0:
            return True  # Hensel lifts
        # substitute x = r + p*y and strip content
        shifted = _shift_scale(coeffs, r, p)
        g = 0
        for c in shifted:
            g = gcd(g, abs(c))
        if g == 0:
            return True  # identically zero: every lift works
        pk = 1
        while g % (pk * p) == 0:
            pk *= p
        shifted = [c // pk for c in shifted]
        if _has_zp_root(shifted, p, depth - 1):
            return True
    return False


def _shift_scale(coeffs, r: int, p: int):
    """Coefficients of f(r + p*y) for integer f given descending."""
    n = len(coeffs) - 1
    out = [0] * (n + 1)
    # expand via synthetic substitution: f(r + z) then z -> p*y
    shifted = list(coeffs)
    taylor = []
    work = list(coeffs)
    for _ in range(n + 1):
        # evaluate and deflate at r
        acc = 0
        new = []
        for c in work:
            acc = acc * r + c
            new.append(acc)
        taylor.append(new[-1])
        work = new[:-1]
        if not work:
            break
    # taylor[k] = coefficient of z^k; multiply by p^k
    m = len(taylor)
    res = [taylor[k] * p ** k for k in range(m)]
    return list(reversed(res))  # descending in y


def poly_has_local_root(coeffs, place: Place) -> bool:
    """Whether the poly (descending Fraction coeffs) has a root in the
    completion at place."""
    cs = _int_poly(coeffs)
    if len(cs) <= 1:
        return cs == [0]
    if place.is_real:
        if (len(cs) - 1) % 2 == 1:
            return True
        return _has_real_root(cs)
    return _has_zp_root(cs, place.p)


def _has_real_root(cs) -> bool:
    """Sign-change / Sturm-free check: sample and fall back to Sturm."""
    # quick: odd degree handled by caller; even degree:
    from fractions import Fraction as F
    sturm = [[F(c) for c in cs]]
    d = len(cs) - 1
    sturm.append([F(c * (d - i)) for i, c in enumerate(cs[:-1])])
    from .binforms import _poly_divmod, _poly_trim
    while any(c != 0 for c in sturm[-1]) and len(sturm[-1]) > 1:
        _, r = _poly_divmod(sturm[-2], sturm[-1])
        r = _poly_trim([-c for c in r])
        if r == [0] or all(c == 0 for c in r):
            break
        sturm.append(r)

    def signs_at_inf(sign):
        out = []
        for p_ in sturm:
            lead = p_[0]
            deg = len(p_) - 1
            s = lead if sign > 0 else lead * (-1) ** deg
            out.append(1 if s > 0 else (-1 if s < 0 else 0))
        return out

    def variations(ss):
        ss = [s for s in ss if s != 0]
        return sum(1 for a, b in zip(ss, ss[1:]) if a != b)

    return variations(signs_at_inf(-1)) - variations(signs_at_inf(1)) > 0


def binary_form_has_local_root(form: HomForm, place: Place) -> bool:
    """Whether a binary form has a nontrivial zero over the completion."""
    from .binforms import coeff_list
    cs = coeff_list(form)
    if cs[0] == 0:
        return True  # [1:0] is a zero
    return poly_has_local_root(cs, place)
