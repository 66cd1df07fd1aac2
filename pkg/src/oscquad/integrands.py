"""Built-in test integrands with analytic derivatives of every order.

All kinds are entire or meromorphic with poles off [-1, 1], so they can be
evaluated at the complex quadrature nodes of the oscillatory rules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

KINDS = ("monomial", "polynomial", "exponential", "cosine", "runge")


@dataclass(frozen=True)
class IntegrandSpec:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown integrand kind {self.kind!r}")
        for p in self.params:
            if not np.isfinite(p):
                raise ValueError("integrand parameters must be finite")

    @classmethod
    def monomial(cls, j):
        if int(j) != j or j < 0:
            raise ValueError("monomial degree must be a non-negative integer")
        return cls("monomial", (int(j),))

    @classmethod
    def polynomial(cls, coeffs):
        """``coeffs[m]`` multiplies ``x**m``."""
        return cls("polynomial", tuple(complex(c) for c in coeffs))

    @classmethod
    def exponential(cls):
        return cls("exponential")

    @classmethod
    def cosine(cls, c):
        return cls("cosine", (float(c),))

    @classmethod
    def runge(cls, a):
        if a <= 0:
            raise ValueError("runge parameter must be positive")
        return cls("runge", (float(a),))

    def __call__(self, x):
        return self.derivative(x, 0)

    def derivative(self, x, order):
        """``order``-th derivative evaluated at (possibly complex) ``x``."""
        x = np.asarray(x, dtype=complex)
        if self.kind == "monomial":
            return _poly_derivative(_monomial_coeffs(self.params[0]), x, order)
        if self.kind == "polynomial":
            return _poly_derivative(list(self.params), x, order)
        if self.kind == "exponential":
            return np.exp(x)
        if self.kind == "cosine":
            c = self.params[0]
            # d^k/dx^k cos(cx) = c^k cos(cx + k pi/2)
            return c**order * np.cos(c * x + order * math.pi / 2)
        a = self.params[0]
        # 1/(1 + a x^2) = (1/(1 + i r x) + 1/(1 - i r x)) / 2 with r = sqrt(a)
        r = math.sqrt(a)
        total = 0
        for c in (1j * r, -1j * r):
            total = total + (-c) ** order * math.factorial(order) / (1 + c * x) ** (order + 1)
        return total / 2


def _monomial_coeffs(j):
    coeffs = [0] * (j + 1)
    coeffs[j] = 1
    return coeffs


def _poly_derivative(coeffs, x, order):
    out = np.zeros_like(x)
    for m in range(len(coeffs) - 1, order - 1, -1):
        falling = math.perm(m, order)
        out = out * x + coeffs[m] * falling
    return out
