"""Gaussian rules for e^{i w x} on [-1, 1]: nodes, multiplicities and weights.

The weight is complex, so nodes are complex and nothing guarantees they
are simple.  ``gauss_rule`` clusters nearly coincident roots and falls
back to a confluent (Hermite-type) rule that also samples derivatives.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConvergenceError
from .hankel import TOL_EXIST, TOL_ZERO, lu_det
from .integrands import IntegrandSpec
from .moments import check_omega, moments
from .orthopoly import MonicPolynomial, monic_op

log = logging.getLogger(__name__)

CLUSTER_TOL = 1e-8
MAX_ITER = 500
MAX_CONDITION = 1e14
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureRule:
    """sum_nu sum_k weights[nu][k] f^(k)(nodes[nu])."""

    omega: float
    n: int
    nodes: np.ndarray
    multiplicities: tuple
    weights: tuple
    # max |rule(x^j) - mu_j| / (1 + |mu_j|) over the equations not used to fit
    unfitted_residual: float = field(default=0.0)

    @property
    def is_simple(self):
        return all(m == 1 for m in self.multiplicities)

    def simple_weights(self):
        return np.array([w[0] for w in self.weights])


def polyroots(coeffs):
    """Roots of the monic polynomial x^n + sum_m coeffs[m] x^m.

    Aberth simultaneous iteration from points on the circle of radius
    1 + max|a_m|, then Newton polishing; sorted by (real, imag).
    """
    a = np.asarray(coeffs, dtype=complex)
    n = len(a)
    if n < 1:
        raise ValueError("degree must be at least 1")
    full = np.append(a, 1.0)[::-1]  # highest degree first for polyval
    dfull = np.polyder(full)
    abs_full = np.abs(full)
    radius = 1.0 + np.max(np.abs(a))
    # offset angle keeps the start off symmetry axes of the root set
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))

    def residual_ok(z):
        pz = np.abs(np.polyval(full, z))
        floor = 10 * _EPS * np.polyval(abs_full, np.abs(z))
        return pz <= np.maximum(1e-13 * (1 + np.abs(z)) ** n, floor), pz

    for _ in range(MAX_ITER):
        ok, _ = residual_ok(z)
        if ok.all():
            break
        pz = np.polyval(full, z)
        dpz = np.polyval(dfull, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            repulsion = (1.0 / diff).sum(axis=1) - 1.0
            step = ratio / (1 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
    else:
        ok, pz = residual_ok(z)
        if not ok.all():
            raise ConvergenceError(
                f"root iteration did not converge in {MAX_ITER} steps",
                residual=float(pz.max()),
            )

    for _ in range(3):
        pz = np.polyval(full, z)
        dpz = np.polyval(dfull, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            trial = z - pz / dpz
        better = np.isfinite(trial) & (np.abs(np.polyval(full, trial)) < np.abs(pz))
        z = np.where(better, trial, z)
    return np.array(sorted(z, key=lambda c: (c.real, c.imag)))


def roots(p: MonicPolynomial):
    return polyroots(p.coeffs)


def detect_multiplicity(roots, cluster_tol=CLUSTER_TOL):
    """Greedy clustering: a root joins the first cluster whose centroid is within tol."""
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    clusters = []
    for r in roots:
        for c in clusters:
            if abs(r - np.mean(c)) <= cluster_tol:
                c.append(r)
                break
        else:
            clusters.append([r])
    nodes = np.array([np.mean(c) for c in clusters], dtype=complex)
    mults = tuple(len(c) for c in clusters)
    return nodes, mults


def _confluent_matrix(nodes, mults, rows):
    # row j, column (nu, k): d^k/dx^k x^j at nodes[nu]
    cols = []
    for x, m in zip(nodes, mults):
        for k in range(m):
            col = np.zeros(rows, dtype=complex)
            for j in range(k, rows):
                col[j] = math.perm(j, k) * x ** (j - k)
            cols.append(col)
    return np.column_stack(cols)


def _split_weights(flat, mults):
    out, pos = [], 0
    for m in mults:
        out.append(np.array(flat[pos : pos + m]))
        pos += m
    return tuple(out)


def _moment_residual(a, w, mu):
    return float(np.max(np.abs(a @ w - mu) / (1 + np.abs(mu)), initial=0.0))


def confluent_rule(nodes, multiplicities, omega):
    """Weights w_{nu,k} fitted to mu_0..mu_{n-1}; mu_n..mu_{2n-1} are checked, not fitted.

    The result's ``unfitted_residual`` reports how far the rule is from
    degree 2n-1 exactness; a large value means the nodes were wrong.
    """
    omega = check_omega(omega, allow_zero=True)
    nodes = np.asarray(nodes, dtype=complex)
    mults = tuple(int(m) for m in multiplicities)
    if len(mults) != len(nodes) or any(m < 1 for m in mults):
        raise ValueError("one positive multiplicity per node required")
    n = sum(mults)
    mu = moments(omega, 2 * n - 1).values
    a = _confluent_matrix(nodes, mults, 2 * n)
    square = a[:n]
    _, rcond = lu_det(square)
    if rcond == 0 or 1.0 / rcond > MAX_CONDITION:
        raise ConvergenceError(
            "generalized Vandermonde system is singular to working precision",
            condition=math.inf if rcond == 0 else 1.0 / rcond,
        )
    w = scipy.linalg.solve(square, mu[:n], check_finite=False)
    residual = _moment_residual(a[n:], w, mu[n:])
    if residual > 1e-6:
        log.warning("confluent rule misses moments n..2n-1 by %.3e", residual)
    return QuadratureRule(omega, n, nodes, mults, _split_weights(w, mults), residual)


def gauss_rule(omega, n, cluster_tol=CLUSTER_TOL, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO):
    """n-point Gaussian rule: nodes at the roots of p_n, weights from the moment equations."""
    p = monic_op(omega, n, tol_exist, tol_zero)
    nodes, mults = detect_multiplicity(roots(p), cluster_tol)
    return confluent_rule(nodes, mults, p.omega)


def integrate(rule: QuadratureRule, f: IntegrandSpec):
    total = 0j
    for x, w in zip(rule.nodes, rule.weights):
        for k, wk in enumerate(w):
            total += wk * complex(f.derivative(x, k))
    return total


def exactness_check(rule: QuadratureRule):
    """max_{j <= 2n-1} |rule(x^j) - mu_j| / (1 + |mu_j|)."""
    mu = moments(rule.omega, 2 * rule.n - 1).values
    a = _confluent_matrix(rule.nodes, rule.multiplicities, 2 * rule.n)
    w = np.concatenate(rule.weights)
    return _moment_residual(a, w, mu)


def simplicity_report(omega, n, tol_exist=TOL_EXIST, tol_zero=TOL_ZERO):
    """Smallest pairwise distance between the roots of p_n."""
    r = roots(monic_op(omega, n, tol_exist, tol_zero))
    if len(r) < 2:
        return math.inf
    d = np.abs(r[:, None] - r[None, :])
    return float(d[np.triu_indices(len(r), 1)].min())
