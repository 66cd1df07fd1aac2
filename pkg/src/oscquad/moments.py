"""Moments of the oscillatory weight e^{i w x} on [-1, 1].

    mu_k(w) = int_{-1}^{1} x^k exp(i w x) dx

Three evaluation routes are provided: the forward recurrence, the expanded
closed form, and a power series in (i w) summed in guarded fixed-point
arithmetic.  ``moments`` picks per entry whichever route is stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

RECURRENCE = "recurrence"
SERIES = "series"
CLOSED_FORM = "closed-form"


def check_omega(omega, allow_zero=False):
    """Validate a frequency and return it as a float."""
    omega = float(omega)
    if not math.isfinite(omega) or omega < 0:
        raise ValueError(f"omega must be finite and non-negative, got {omega!r}")
    if omega == 0 and not allow_zero:
        raise ValueError("omega = 0 divides by zero here; use the series/limit path")
    return omega


@dataclass(frozen=True)
class MomentSequence:
    """mu_0..mu_K at a fixed omega, with the route used for each entry."""

    omega: float
    values: np.ndarray
    methods: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def kmax(self):
        return len(self.values) - 1


def _s(omega, nu):
    # (e^{iw} - (-1)^nu e^{-iw}) / (iw), with its real/imaginary split made explicit
    if nu % 2 == 0:
        return complex(2.0 * math.sin(omega) / omega, 0.0)
    return complex(0.0, -2.0 * math.cos(omega) / omega)


def moment_recurrence(omega, kmax):
    """Forward recurrence ``mu_k = s_k - (k / iw) mu_{k-1}`` from ``mu_0 = 2 sin w / w``.

    Each step multiplies the inherited error by ``k / w``, so the entries
    are only trustworthy for ``k <= w``.
    """
    omega = check_omega(omega)
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    values = np.empty(kmax + 1, dtype=complex)
    values[0] = _s(omega, 0)
    for k in range(1, kmax + 1):
        # -(k / iw) * mu = i (k / w) * mu
        values[k] = _s(omega, k) + 1j * (k / omega) * values[k - 1]
    return MomentSequence(omega, values, (RECURRENCE,) * (kmax + 1))


def moment_closed_form(omega, k):
    """Expanded closed form of mu_k in terms of cos w, sin w and powers of (-i w)."""
    omega = check_omega(omega)
    if k < 0:
        raise ValueError("k must be non-negative")
    x = -1j * omega
    odd_sum = 0j
    even_sum = 1 + 0j
    term = 1 + 0j  # x^nu / nu!
    for nu in range(1, k + 1):
        term = term * x / nu
        if nu % 2:
            odd_sum += term / x  # x^{nu-1} / nu!
        else:
            even_sum += term
    bracket = math.cos(omega) * odd_sum - (math.sin(omega) / omega) * even_sum
    return 2 * (-1) ** (k + 1) * math.factorial(k) / (1j * omega) ** k * bracket


def default_guard_digits(omega):
    return math.ceil(0.9 * omega) + 10


def moment_series(omega, k, guard_digits=None):
    """mu_k from ``sum_m (i w)^m / m! * I_{k+m}``, ``I_j = int x^j dx``.

    The partial sums cancel by up to a factor ``e^w``, so the sum runs in
    integer fixed point carrying ``guard_digits`` decimal digits beyond
    double precision.  Valid for every ``w >= 0``, including ``w = 0``.
    """
    omega = check_omega(omega, allow_zero=True)
    if k < 0:
        raise ValueError("k must be non-negative")
    if guard_digits is None:
        guard_digits = default_guard_digits(omega)
    bits = 53 + math.ceil(guard_digits * math.log2(10))
    if 0 < omega < 1:
        # odd moments are O(w); keep them off the fixed-point floor
        bits += math.ceil(-math.log2(omega))
    num, den = omega.as_integer_ratio()

    # Only m with k + m even contribute; (i w)^m is then (-1)^{m/2} w^m for
    # even k and i (-1)^{(m-1)/2} w^m for odd k, so the sum is one real number.
    one = 1 << bits
    term = one  # w^m / m! in fixed point
    total = 0
    small_run = 0
    m = 0
    while True:
        if m > 0:
            term = term * num // (m * den)
        j = k + m
        if j % 2 == 0:
            contrib = 2 * term // (j + 1)
            if (m // 2) % 2:
                contrib = -contrib
        else:
            contrib = 0
        total += contrib
        # three consecutive negligible terms: odd j always contributes zero
        if abs(contrib) <= abs(total) >> bits:
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
        m += 1
    value = float(Fraction(total, one))
    return complex(value, 0.0) if k % 2 == 0 else complex(0.0, value)


def moments(omega, kmax):
    """mu_0..mu_kmax, using the recurrence while ``k <= w`` and the series beyond."""
    omega = check_omega(omega, allow_zero=True)
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    values = np.empty(kmax + 1, dtype=complex)
    methods = []
    if omega > 0:
        k_rec = min(kmax, int(math.floor(omega)))
        rec = moment_recurrence(omega, k_rec)
        values[: k_rec + 1] = rec.values
        methods.extend(rec.methods)
    else:
        k_rec = -1
    guard = default_guard_digits(omega)
    for k in range(k_rec + 1, kmax + 1):
        values[k] = moment_series(omega, k, guard)
        methods.append(SERIES)
    return MomentSequence(omega, values, tuple(methods))
