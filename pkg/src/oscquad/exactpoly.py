"""Exact rational polynomials in X = -i w and the hatted Hankel determinant.

When t = tan(w)/w is rational, every cos-factored moment mu^_k is a
polynomial in X with rational coefficients, and so is the determinant of
their Hankel matrix.  A transcendental w cannot be a root of a nonzero
such polynomial, so a determinant that is not identically zero certifies
existence of p_n for every transcendental w with tan(w)/w = t.
"""
from __future__ import annotations

import math
from fractions import Fraction

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"


class RationalPolynomial:
    """Immutable polynomial with Fraction coefficients, ``coeffs[m]`` of ``X**m``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def constant(cls, value):
        return cls([value])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({format_poly(self)!r})"

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dlead = other.coeffs[-1]
        dn = other.degree
        quot = [Fraction(0)] * max(0, len(rem) - dn)
        for shift in range(len(rem) - dn - 1, -1, -1):
            q = rem[shift + dn] / dlead
            quot[shift] = q
            if q:
                for i, c in enumerate(other.coeffs):
                    rem[shift + i] -= q * c
        return RationalPolynomial(quot), RationalPolynomial(rem[:dn])

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, x):
        """Evaluate at any number type that mixes with Fraction (Horner)."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + (float(c) if isinstance(x, (float, complex)) else c)
        return out


def format_fraction(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p, var="X"):
    """Human-readable form with exact ``p/q`` coefficients, e.g. ``-4 + 2*X^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = format_fraction(abs(c))
        if m == 0:
            body = mag
        else:
            mono = var if m == 1 else f"{var}^{m}"
            body = mono if abs(c) == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def hatted_moment_poly(k, t):
    """mu^_k(X) = -2 k! [sum_{nu odd <= k} X^{nu-1}/nu! - t (1 + sum_{2 <= nu even <= k} X^nu/nu!)]."""
    if k < 0:
        raise ValueError("k must be non-negative")
    t = Fraction(t)
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[0] -= t
    for nu in range(1, k + 1):
        inv = Fraction(1, math.factorial(nu))
        if nu % 2:
            coeffs[nu - 1] += inv
        else:
            coeffs[nu] -= t * inv
    scale = -2 * math.factorial(k)
    return RationalPolynomial(scale * c for c in coeffs)


def hatted_hankel_matrix(n, t):
    mus = [hatted_moment_poly(k, t) for k in range(2 * n - 1)]
    return [[mus[r + s] for s in range(n)] for r in range(n)]


def bareiss_det(matrix):
    """Fraction-free determinant over Q[X]; every division is exact."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return RationalPolynomial.constant(1)
    sign = 1
    prev = RationalPolynomial.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return RationalPolynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_det(matrix):
    """Laplace expansion along the first row; exponential cost, test-sized inputs only."""
    n = len(matrix)
    if n == 0:
        return RationalPolynomial.constant(1)
    if n == 1:
        return matrix[0][0]
    total = RationalPolynomial()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


def symbolic_hankel(n, t):
    """Exact determinant of the n x n Hankel matrix of mu^_0..mu^_{2n-2}."""
    if n < 1:
        raise ValueError("n must be positive")
    return bareiss_det(hatted_hankel_matrix(n, Fraction(t)))


def existence_certificate(n, t):
    """``certified`` iff the hatted determinant is not the zero polynomial.

    A certificate covers every transcendental w > 0 with tan(w)/w = t
    (and cos w != 0); nothing is claimed about any particular float.
    """
    return NOT_CERTIFIED if symbolic_hankel(n, t).is_zero() else CERTIFIED


def parse_fraction(text):
    """Parse ``"p/q"`` or an integer string into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
