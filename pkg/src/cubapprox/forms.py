"""Exact homogeneous forms with rational coefficients.

A :class:`HomForm` is a homogeneous polynomial in variables x0..x9 with
Fraction coefficients, stored as a map from exponent vectors to nonzero
coefficients.  All arithmetic is exact; equality is bit-exact on the
canonical representation (reduced coefficients, graded-lex term order).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class SingularChange(ValueError):
    """Raised when a coordinate change matrix is not invertible."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class HomForm:
    """Homogeneous form in ``n_vars`` variables over Q."""

    __slots__ = ("n_vars", "degree", "terms", "_hash")

    def __init__(self, n_vars: int, degree: int,
                 terms: Mapping[tuple, object]):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            if sum(exps) != degree:
                raise ValueError(
                    f"exponent vector {exps} does not sum to degree {degree}")
            c = _as_fraction(c)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", dict(sorted(clean.items(),
                                                      reverse=True)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("HomForm is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n_vars: int, degree: int) -> "HomForm":
        return HomForm(n_vars, degree, {})

    @staticmethod
    def monomial(n_vars: int, exps: Sequence[int], coeff=1) -> "HomForm":
        exps = tuple(exps)
        return HomForm(n_vars, sum(exps), {exps: coeff})

    @staticmethod
    def variable(n_vars: int, i: int) -> "HomForm":
        exps = tuple(1 if j == i else 0 for j in range(n_vars))
        return HomForm(n_vars, 1, {exps: 1})

    @staticmethod
    def linear(coeffs: Sequence) -> "HomForm":
        """The linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = tuple(1 if j == i else 0 for j in range(n))
            terms[exps] = c
        return HomForm(n, 1, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomForm)
                and self.n_vars == other.n_vars
                and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.n_vars, self.degree,
                      tuple(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "HomForm") -> "HomForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.n_vars != other.n_vars or self.degree != other.degree:
            raise ValueError("cannot add forms of different shape")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return HomForm(self.n_vars, self.degree, terms)

    def __neg__(self) -> "HomForm":
        return HomForm(self.n_vars, self.degree,
                       {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HomForm") -> "HomForm":
        return self + (-other)

    def __mul__(self, other) -> "HomForm":
        if not isinstance(other, HomForm):
            return self.scale(other)
        if self.n_vars != other.n_vars:
            raise ValueError("variable count mismatch")
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return HomForm(self.n_vars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "HomForm":
        c = _as_fraction(c)
        if c == 0:
            return HomForm.zero(self.n_vars, self.degree)
        return HomForm(self.n_vars, self.degree,
                       {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "HomForm":
        if k < 0:
            raise ValueError("negative power")
        result = HomForm(self.n_vars, 0, {(0,) * self.n_vars: 1})
        for _ in range(k):
            result = result * self
        return result

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n_vars:
            raise ValueError("point dimension mismatch")
        vals = [_as_fraction(p) for p in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def gradient(self) -> list:
        return [self.partial(i) for i in range(self.n_vars)]

    def partial(self, i: int) -> "HomForm":
        if self.degree == 0:
            return HomForm.zero(self.n_vars, 0)
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            new = tuple(new)
            terms[new] = terms.get(new, Fraction(0)) + c * exps[i]
        return HomForm(self.n_vars, self.degree - 1, terms)

    def compose(self, parts: Sequence["HomForm"]) -> "HomForm":
        """Substitute x_i -> parts[i]; all parts share n_vars and degree."""
        if len(parts) != self.n_vars:
            raise ValueError("need one substituting form per variable")
        m = parts[0].n_vars
        d = parts[0].degree
        for p in parts:
            if p.n_vars != m or p.degree != d:
                raise ValueError("substituting forms must share shape")
        out = HomForm.zero(m, self.degree * d)
        for exps, c in self.terms.items():
            term = HomForm(m, 0, {(0,) * m: c}) if self.degree == 0 else None
            prod = HomForm(m, 0, {(0,) * m: 1})
            for p, e in zip(parts, exps):
                if e:
                    prod = prod * (p ** e)
            out = out + prod.scale(c)
        return out

    def substitute_linear(self, M: Sequence[Sequence]) -> "HomForm":
        """Return form(M @ y), a coordinate change by the invertible M."""
        n = self.n_vars
        M = [[_as_fraction(x) for x in row] for row in M]
        if len(M) != n or any(len(row) != n for row in M):
            raise ValueError("matrix dimension mismatch")
        if _det(M) == 0:
            raise SingularChange("coordinate change matrix is singular")
        # x_i = sum_j M[i][j] y_j
        parts = [HomForm.linear(M[i]) for i in range(n)]
        return self.compose(parts)

    def eliminate_last(self) -> "HomForm":
        """Restrict to the hyperplane {x_{n-1} = 0}, dropping that variable."""
        n = self.n_vars
        terms = {}
        for exps, c in self.terms.items():
            if exps[-1] == 0:
                terms[exps[:-1]] = c
        return HomForm(n - 1, self.degree, terms)

    def coeff_in_last(self, k: int) -> "HomForm":
        """Coefficient of x_{n-1}^k, as a form in the first n-1 variables."""
        terms = {}
        for exps, c in self.terms.items():
            if exps[-1] == k:
                terms[exps[:-1]] = c
        return HomForm(self.n_vars - 1, self.degree - k, terms)

    def extend_vars(self, n_vars: int) -> "HomForm":
        """View in a larger variable set (new variables unused)."""
        if n_vars < self.n_vars:
            raise ValueError("cannot shrink variable set")
        pad = (0,) * (n_vars - self.n_vars)
        return HomForm(n_vars, self.degree,
                       {e + pad: c for e, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coeffs."""
        if self.is_zero():
            return Fraction(1)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "HomForm":
        """Scale so integer coefficients are coprime and the leading
        (graded-lex first) coefficient is positive."""
        if self.is_zero():
            return self
        c = self.content()
        lead = next(iter(self.terms.values()))
        if lead < 0:
            c = -c
        return self.scale(1 / c)

    # -- printing / parsing ------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps) if e > 0)
            ac = abs(c)
            if not mono:
                body = str(ac)
            elif ac == 1:
                body = mono
            else:
                body = f"{ac}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"HomForm({self.n_vars}, {self.degree}, '{self}')"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d)|"
                    r"(?P<op>[-+*^()]))")


class FormParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise FormParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num") is not None:
            tokens.append(("num", Fraction(m.group("num")), pos))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("var")[1:]), pos))
        else:
            tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    tokens.append(("end", None, pos))
    return tokens


def parse_form(text: str, n_vars: int | None = None) -> HomForm:
    """Parse the shared polynomial grammar (x0..x9, + - * ^).

    The result must be homogeneous.  If ``n_vars`` is omitted it is
    max used index + 1.
    """
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx]

    def advance():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    # terms: sign factor (* factor)*
    monomials: list[tuple[Fraction, dict]] = []

    def parse_factor():
        kind, val, pos = advance()
        if kind == "num":
            return val, {}
        if kind == "var":
            power = 1
            if peek()[0] == "op" and peek()[1] == "^":
                advance()
                k, v, p2 = advance()
                if k != "num" or v.denominator != 1:
                    raise FormParseError("expected integer exponent", p2)
                power = int(v)
            return Fraction(1), {val: power}
        raise FormParseError("expected coefficient or variable", pos)

    def parse_term():
        coeff, exps = parse_factor()
        while peek()[0] == "op" and peek()[1] == "*":
            advance()
            c2, e2 = parse_factor()
            coeff *= c2
            for i, e in e2.items():
                exps[i] = exps.get(i, 0) + e
        return coeff, exps

    sign = 1
    kind, val, pos = peek()
    if kind == "op" and val in "+-":
        advance()
        sign = -1 if val == "-" else 1
    while True:
        c, e = parse_term()
        monomials.append((sign * c, e))
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            advance()
            sign = -1 if val == "-" else 1
        else:
            raise FormParseError("expected '+' or '-'", pos)

    used = max((max(e, default=-1) for _, e in monomials), default=-1)
    if n_vars is None:
        n_vars = used + 1
    if n_vars < 1 or used >= n_vars:
        raise FormParseError("variable index out of range", 0)
    degrees = {sum(e.values()) for _, e in monomials}
    if len(degrees) != 1:
        raise FormParseError("form is not homogeneous", 0)
    degree = degrees.pop()
    terms: dict = {}
    for c, e in monomials:
        exps = tuple(e.get(i, 0) for i in range(n_vars))
        terms[exps] = terms.get(exps, Fraction(0)) + c
    return HomForm(n_vars, degree, terms)


# -- exact linear algebra helpers -----------------------------------------

def _det(M) -> Fraction:
    n = len(M)
    A = [[_as_fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = A[r][col] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


def mat_inverse(M) -> list:
    n = len(M)
    A = [[_as_fraction(x) for x in row] + [Fraction(int(i == j))
                                           for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularChange("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def mat_vec(M, v) -> list:
    return [sum(_as_fraction(a) * _as_fraction(b) for a, b in zip(row, v))
            for row in M]


def kernel_basis(row: Sequence) -> list:
    """Basis of the kernel of a single nonzero linear functional."""
    row = [_as_fraction(x) for x in row]
    n = len(row)
    piv = next((i for i in range(n) if row[i] != 0), None)
    if piv is None:
        raise ValueError("zero functional has no hyperplane kernel")
    basis = []
    for j in range(n):
        if j == piv:
            continue
        vec = [Fraction(0)] * n
        vec[j] = Fraction(1)
        vec[piv] = -row[j] / row[piv]
        basis.append(vec)
    return basis
