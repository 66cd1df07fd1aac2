"""Monic orthogonal polynomials for the bilinear form (f, g) = int f g e^{i w x} dx.

Two independent constructions are provided: a direct solve of the moment
(Hankel) system for the coefficients, and a sweep that produces the
three-term recurrence coefficients from moments; rebuilding p_n from the
latter must reproduce the former.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
import scipy.linalg

from .errors import ExistenceError
from .hankel import EXISTS, TOL_EXIST, TOL_ZERO, existence, hankel_matrix
from .moments import check_omega, moments
from .oracle import legendre_monic_coeffs

# below this omega the 1/omega terms in the moment formulas are useless
LEGENDRE_LIMIT = 1e-8


@dataclass(frozen=True)
class MonicPolynomial:
    """x^n + a_{n-1} x^{n-1} + ... + a_0 with ``coeffs = (a_0, ..., a_{n-1})``."""

    omega: float
    coeffs: np.ndarray

    @property
    def degree(self):
        return len(self.coeffs)

    def full_coeffs(self):
        """All n+1 coefficients, lowest degree first, leading 1 included."""
        return np.append(np.asarray(self.coeffs, dtype=complex), 1.0)

    def __call__(self, x):
        c = self.full_coeffs()
        return np.polynomial.polynomial.polyval(x, c)

    def to_dict(self):
        return {
            "omega": self.omega,
            "degree": self.degree,
            "coefficients": [{"re": c.real + 0.0, "im": c.imag + 0.0} for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data):
        coeffs = np.array([complex(c["re"], c["im"]) for c in data["coefficients"]])
        if len(coeffs) != data["degree"]:
            raise ValueError("degree does not match the number of coefficients")
        return cls(float(data["omega"]), coeffs)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}; ``beta[0]`` is beta_1."""

    omega: float
    alpha: np.ndarray
    beta: np.ndarray

    def polynomial(self, n=None):
        """Rebuild p_n (default: the highest degree the coefficients allow)."""
        if n is None:
            n = len(self.alpha)
        prev = np.zeros(1, dtype=complex)
        cur = np.ones(1, dtype=complex)
        for k in range(n):
            nxt = np.zeros(k + 2, dtype=complex)
            nxt[1:] += cur
            nxt[:-1] -= self.alpha[k] * cur
            if k >= 1:
                nxt[: k] -= self.beta[k - 1] * prev
            prev, cur = cur, nxt
        return MonicPolynomial(self.omega, cur[:-1])


def legendre_limit(n, omega=0.0):
    coeffs = legendre_monic_coeffs(n)
    return MonicPolynomial(omega, np.array([float(c) for c in coeffs[:-1]], dtype=complex))


def monic_op(omega, n, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO):
    """p_n from ``[v_0 .. v_{n-1}] a = -v_n`` with ``v_k = (mu_k, ..., mu_{k+n-1})``.

    Raises ExistenceError (carrying the report) unless the Hankel verdict
    is ``exists``.
    """
    omega = check_omega(omega, allow_zero=True)
    if n < 1:
        raise ValueError("n must be positive")
    if omega < LEGENDRE_LIMIT:
        return legendre_limit(n, omega)
    report = existence(omega, n, tol_exist, tol_zero)
    if report.verdict != EXISTS:
        raise ExistenceError(
            f"p_{n} at omega={omega!r} is {report.verdict} "
            f"(|Delta_{n}| = {abs(report.delta):.3e}, scale {report.scale:.3e})",
            report=report,
        )
    m = moments(omega, 2 * n - 1)
    h = hankel_matrix(m, n)
    rhs = -m.values[n : 2 * n]
    return MonicPolynomial(omega, scipy.linalg.solve(h, rhs, check_finite=False))


def inner_product(omega, f, g, mu=None):
    """(f, g) for coefficient arrays (lowest degree first), as a moment combination."""
    prod = np.polynomial.polynomial.polymul(f, g)
    if mu is None:
        mu = moments(omega, len(prod) - 1).values
    return complex(np.dot(prod, mu[: len(prod)]))


def orthogonality_residuals(p, mu=None):
    """|(p, x^j)| for j < n, i.e. |sum_m a_m mu_{m+j} + mu_{n+j}|."""
    n = p.degree
    if mu is None:
        mu = moments(p.omega, 2 * n - 1).values
    c = p.full_coeffs()
    return np.array([abs(np.dot(c, mu[j : j + n + 1])) for j in range(n)])


def recurrence_coeffs(omega, n, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO, digits=40):
    """alpha_0..alpha_{n-1} and beta_1..beta_{n-1} from the moments.

    alpha_k = (x p_k, p_k) / (p_k, p_k),  beta_k = (p_k, p_k) / (p_{k-1}, p_{k-1}).
    The inner products are carried as mixed moments sigma_{k,l} = (p_k, x^l)
    (so (p_k, p_k) = sigma_{k,k} by orthogonality) and updated with the
    recurrence itself.  The sweep runs in ``digits``-digit arithmetic so the
    result carries only the rounding already present in the float moments.

    Every intermediate p_k must exist; the first index that fails the
    Hankel verdict is reported in the raised ExistenceError.
    """
    omega = check_omega(omega, allow_zero=True)
    if n < 1:
        raise ValueError("n must be positive")
    if omega < LEGENDRE_LIMIT:
        alpha = np.zeros(n, dtype=complex)
        beta = np.array([k * k / (4.0 * k * k - 1) for k in range(1, n)], dtype=complex)
        return RecurrenceCoeffs(omega, alpha, beta)
    for k in range(1, n + 1):
        report = existence(omega, k, tol_exist, tol_zero)
        if report.verdict != EXISTS:
            raise ExistenceError(
                f"recurrence breaks down: p_{k} at omega={omega!r} is {report.verdict}",
                report=report,
                index=k,
            )
    ctx = mpmath.MPContext()
    ctx.dps = digits
    size = 2 * n
    mu = [ctx.mpc(complex(v)) for v in moments(omega, size - 1).values]
    zero = ctx.mpc(0)
    alpha = [mu[1] / mu[0]]
    norms = [mu[0]]
    sig_prev = [zero] * size
    sig = mu
    for k in range(1, n):
        new = [zero] * size
        for l in range(k, size - k):
            new[l] = sig[l + 1] - alpha[k - 1] * sig[l]
            if k >= 2:
                new[l] -= (norms[k - 1] / norms[k - 2]) * sig_prev[l]
        norms.append(new[k])
        alpha.append(new[k + 1] / new[k] - sig[k] / sig[k - 1])
        sig_prev, sig = sig, new
    beta = [norms[k] / norms[k - 1] for k in range(1, n)]
    return RecurrenceCoeffs(
        omega,
        np.array([complex(a) for a in alpha]),
        np.array([complex(b) for b in beta], dtype=complex),
    )
