"""Hankel moment determinants and numerical existence verdicts.

The monic orthogonal polynomial of degree n for e^{i w x} exists exactly
when the n x n moment Hankel determinant is nonzero.  In floating point
"nonzero" needs a scale; ``existence`` compares |Delta_n| against
||[H | v_n]||_1 * ||adj H||_1, the augmented moment matrix of the
coefficient system times the cofactor matrix.  The ratio is a relative
distance to singularity: invariant under uniform scaling of the moments,
and for n = 1 it reduces to |mu_0| / max(|mu_0|, |mu_1|).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
import scipy.linalg
from scipy.linalg import lapack

from .moments import MomentSequence, check_omega, moments

TOL_EXIST = 1e-8
TOL_ZERO = 1e-12

EXISTS = "exists"
DEGENERATE = "degenerate"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ExistenceReport:
    omega: float
    n: int
    delta: complex
    scale: float
    verdict: str
    condition_estimate: float

    @property
    def relative_delta(self):
        return abs(self.delta) / self.scale if self.scale > 0 else 0.0


def hankel_matrix(m, n):
    """n x n matrix with entry (r, s) = mu_{r+s} (0-based)."""
    if n < 1:
        raise ValueError("n must be positive")
    values = m.values if isinstance(m, MomentSequence) else np.asarray(m)
    if len(values) < 2 * n - 1:
        raise ValueError(
            f"hankel_matrix(n={n}) needs moments mu_0..mu_{2 * n - 2} "
            f"({2 * n - 1} values), got {len(values)}"
        )
    return scipy.linalg.hankel(values[:n], values[n - 1 : 2 * n - 1])


def lu_det(a):
    """Determinant and reciprocal 1-norm condition estimate via partial-pivoting LU."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    with warnings.catch_warnings():
        # exactly singular input is a legitimate outcome here
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    det = np.prod(np.diag(lu)) * (-1) ** swaps
    if det == 0:
        return complex(det), 0.0
    anorm = np.abs(a).sum(axis=0).max()
    rcond, _ = lapack.zgecon(lu, anorm)
    return complex(det), float(rcond)


def hankel_det(omega, n):
    if n < 1:
        raise ValueError("n must be positive")
    m = moments(omega, 2 * n - 2)
    if n == 1:
        return complex(m[0])
    return lu_det(hankel_matrix(m, n))[0]


def _scaled_moment_digits(omega, k):
    # digits lost to cancellation inside the truncated exponential sums
    lost = math.lgamma(k + 1) / math.log(10) - k * math.log10(omega)
    return 25 + max(0, math.ceil(lost)) + math.ceil(0.5 * omega)


def scaled_moment(omega, k):
    """mu~_k = -2 k! [cos w S_odd - (sin w / w)(1 + S_even)] in extended precision.

    The bracket is a difference of truncated exponential-type sums and
    cancels badly for k >> w, so it is evaluated with mpmath at a precision
    chosen from k and w.
    """
    omega = check_omega(omega)
    ctx = mpmath.MPContext()
    ctx.dps = _scaled_moment_digits(omega, k)
    w = ctx.mpf(omega)
    x = ctx.mpc(0, -w)
    odd_sum = ctx.mpc(0)
    even_sum = ctx.mpc(1)
    term = ctx.mpc(1)  # x^nu / nu!
    for nu in range(1, k + 1):
        term = term * x / nu
        if nu % 2:
            odd_sum += term / x
        else:
            even_sum += term
    bracket = ctx.cos(w) * odd_sum - (ctx.sin(w) / w) * even_sum
    return complex(-2 * math.factorial(k) * bracket)


def scaled_hankel_det(omega, n):
    """Determinant of the Hankel matrix of mu~_0..mu~_{2n-2}.

    Related to the plain determinant by Delta_n = (i w)^{-n(n-1)} Delta~_n.
    """
    omega = check_omega(omega)
    if n < 1:
        raise ValueError("n must be positive")
    tilde = np.array([scaled_moment(omega, k) for k in range(2 * n - 1)])
    if n == 1:
        return complex(tilde[0])
    return lu_det(hankel_matrix(tilde, n))[0]


def augmented_scale(values, n, delta=None, rcond=None):
    """||[H | v_n]||_1 * ||adj H||_1 for the moments ``values[:2n]``.

    ``||adj H|| = |Delta| ||H^-1||`` is recovered from the LU condition
    estimate; an exactly singular H falls back to ||[H | v_n]||_1^n.
    """
    values = np.asarray(values)
    aug = scipy.linalg.hankel(values[:n], values[n - 1 : 2 * n])
    aug_norm = float(np.abs(aug).sum(axis=0).max())
    h = aug[:, :n]
    if delta is None or rcond is None:
        delta, rcond = lu_det(h)
    if delta == 0 or rcond == 0:
        return aug_norm**n
    h_norm = float(np.abs(h).sum(axis=0).max())
    return aug_norm * abs(delta) / (rcond * h_norm)


def verdict_for(delta, scale, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO):
    mag = abs(delta)
    if mag > tol_exist * scale:
        return EXISTS
    if mag <= tol_zero * scale:
        return DEGENERATE
    return INDETERMINATE


def existence(omega, n, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO):
    """Scale-relative verdict on whether p_n for this omega exists."""
    if n < 1:
        raise ValueError("n must be positive")
    m = moments(omega, 2 * n - 1)
    h = hankel_matrix(m, n)
    delta, rcond = lu_det(h)
    scale = augmented_scale(m.values, n, delta, rcond)
    return ExistenceReport(
        omega=m.omega,
        n=n,
        delta=delta,
        scale=scale,
        verdict=verdict_for(delta, scale, tol_exist, tol_zero),
        condition_estimate=math.inf if rcond == 0 else 1.0 / rcond,
    )
