"""Brute-force references used to check the fast paths.

Nothing here shares code with the moment recurrences or the Hankel
machinery: integrals are done by phase-resolved composite Gauss-Legendre
quadrature and the omega -> 0 limit comes from the classical Legendre
recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError
from .integrands import IntegrandSpec


@dataclass(frozen=True)
class OracleConfig:
    panels_per_period: int = 8
    base_rule_order: int = 16
    target_rel_tol: float = 1e-12
    max_doublings: int = 20

    def __post_init__(self):
        if self.panels_per_period < 4:
            raise ValueError("panels_per_period must be at least 4")
        if self.base_rule_order < 1:
            raise ValueError("base_rule_order must be positive")


def _composite(f, omega, panels, nodes, weights):
    edges = np.linspace(-1.0, 1.0, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    vals = f(x) * np.exp(1j * omega * x)
    return np.sum(w * vals), np.sum(w * np.abs(vals))


def oracle_integrate(f: IntegrandSpec, omega, cfg: OracleConfig = OracleConfig()):
    """int_{-1}^{1} f(x) exp(i omega x) dx by panel doubling until two passes agree.

    Agreement is measured against ``int |f|``, so integrals that cancel to
    zero still terminate.
    """
    omega = float(omega)
    nodes, weights = np.polynomial.legendre.leggauss(cfg.base_rule_order)
    # each panel at most 1/panels_per_period of an oscillation period wide
    panels = max(8, math.ceil(2.0 * omega * cfg.panels_per_period / (2 * math.pi)))
    prev, _ = _composite(f, omega, panels, nodes, weights)
    for _ in range(cfg.max_doublings):
        panels *= 2
        cur, l1 = _composite(f, omega, panels, nodes, weights)
        if abs(cur - prev) <= cfg.target_rel_tol * max(abs(cur), l1):
            return complex(cur)
        prev = cur
    raise ConvergenceError(
        f"oracle quadrature did not settle after {cfg.max_doublings} doublings",
        residual=abs(cur - prev),
    )


def legendre_monic_coeffs(n):
    """Exact monic Legendre coefficients, lowest degree first, leading 1 included."""
    p_prev = [Fraction(1)]
    if n == 0:
        return p_prev
    p = [Fraction(0), Fraction(1)]
    for k in range(1, n):
        # p_{k+1} = x p_k - k^2 / (4k^2 - 1) p_{k-1}
        b = Fraction(k * k, 4 * k * k - 1)
        nxt = [Fraction(0)] + p
        for m, c in enumerate(p_prev):
            nxt[m] -= b * c
        p_prev, p = p, nxt
    return p


def _legendre_pair(n, x):
    # Bonnet recurrence for the standard (P_n(1) = 1) normalization
    p_prev, p = np.ones_like(x), x
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p_prev, p


def legendre_reference(n):
    """Monic Legendre coefficients ``a_0..a_{n-1}``, the n roots and Gauss-Legendre weights."""
    if not 1 <= n <= 16:
        raise ValueError("legendre_reference supports 1 <= n <= 16")
    from .quadrule import polyroots

    coeffs = legendre_monic_coeffs(n)
    a = np.array([float(c) for c in coeffs[:-1]], dtype=complex)
    roots = np.sort(polyroots(a).real)
    p_nm1, p_n = _legendre_pair(n, roots)
    dp = n * (roots * p_n - p_nm1) / (roots**2 - 1)
    weights = 2.0 / ((1 - roots**2) * dp**2)
    return a, roots, weights
