"""Compactly supported smooth test functions.

Both the 1-d and the space-time variants are products of the bump
``b(r) = exp(1 - 1/(1 - r^2))`` (so ``b(0) = 1``) with a polynomial
modulation ``1 + sum_j a_j r^j`` in the scaled space variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def bump(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    m = np.abs(r) < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - r[m] ** 2))
    return out


def bump_d(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    m = np.abs(r) < 1.0
    rm = r[m]
    q = 1.0 - rm * rm
    out[m] = np.exp(1.0 - 1.0 / q) * (-2.0 * rm / (q * q))
    return out


def _poly(coeffs, r):
    # 1 + a_1 r + a_2 r^2 + ...
    return np.polynomial.polynomial.polyval(r, (1.0, *coeffs))


def _poly_d(coeffs, r):
    if not coeffs:
        return np.zeros_like(np.asarray(r, dtype=float))
    d = np.polynomial.polynomial.polyder((1.0, *coeffs))
    return np.polynomial.polynomial.polyval(r, d)


def default_coeffs(degree):
    return tuple(0.5 ** j for j in range(1, degree + 1))


@dataclass(frozen=True)
class TestFunction1D:
    center: float = 0.0
    width: float = 1.0
    coeffs: tuple = ()
    amplitude: float = 1.0

    __test__ = False

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def support(self):
        return self.center - self.width, self.center + self.width

    def __call__(self, x):
        r = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.amplitude * bump(r) * _poly(self.coeffs, r)

    def derivative(self, x):
        r = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.amplitude / self.width * (bump_d(r) * _poly(self.coeffs, r) + bump(r) * _poly_d(self.coeffs, r))


@dataclass(frozen=True)
class TestFunction:
    """theta(x, t) = A b(X) P(X) b(T), X = (x - xc)/wx, T = (t - tc)/wt.

    The declared box is ``[xc - wx, xc + wx] x [max(0, tc - wt), tc + wt]``;
    theta may be nonzero on t = 0 when ``tc < wt``.
    """

    xc: float
    tc: float
    wx: float
    wt: float
    coeffs: tuple = ()
    amplitude: float = 1.0

    __test__ = False

    def __post_init__(self):
        if not (self.wx > 0 and self.wt > 0):
            raise ValueError("widths must be positive")
        if not self.tc + self.wt > 0:
            raise ValueError("t-support must meet t > 0")
        vals = (self.xc, self.tc, self.wx, self.wt, self.amplitude, *self.coeffs)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("test function parameters must be finite")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @classmethod
    def from_config(cls, cfg):
        xc, tc = cfg["center"]
        wx, wt = cfg["widths"]
        coeffs = cfg.get("coeffs")
        if coeffs is None:
            coeffs = default_coeffs(int(cfg.get("degree", 0)))
        return cls(float(xc), float(tc), float(wx), float(wt), tuple(coeffs), float(cfg.get("amplitude", 1.0)))

    def to_config(self):
        return {
            "center": [self.xc, self.tc],
            "widths": [self.wx, self.wt],
            "coeffs": list(self.coeffs),
            "amplitude": self.amplitude,
        }

    @property
    def box(self):
        return (self.xc - self.wx, self.xc + self.wx, max(0.0, self.tc - self.wt), self.tc + self.wt)

    def _scaled(self, x, t):
        return (np.asarray(x, dtype=float) - self.xc) / self.wx, (np.asarray(t, dtype=float) - self.tc) / self.wt

    def __call__(self, x, t):
        X, T = self._scaled(x, t)
        return self.amplitude * bump(X) * _poly(self.coeffs, X) * bump(T)

    def theta_x(self, x, t):
        X, T = self._scaled(x, t)
        dx = bump_d(X) * _poly(self.coeffs, X) + bump(X) * _poly_d(self.coeffs, X)
        return self.amplitude / self.wx * dx * bump(T)

    def theta_t(self, x, t):
        X, T = self._scaled(x, t)
        return self.amplitude / self.wt * bump(X) * _poly(self.coeffs, X) * bump_d(T)

    def partials(self, x, t):
        """(theta_t, theta_x) sharing one bump evaluation."""
        X, T = self._scaled(x, t)
        bx, bxd = bump(X), bump_d(X)
        bt, btd = bump(T), bump_d(T)
        P = _poly(self.coeffs, X)
        theta_t = self.amplitude / self.wt * bx * P * btd
        theta_x = self.amplitude / self.wx * (bxd * P + bx * _poly_d(self.coeffs, X)) * bt
        return theta_t, theta_x

    def at_time(self, t):
        """The 1-d slice x -> theta(x, t)."""
        b = float(bump((t - self.tc) / self.wt))
        return TestFunction1D(self.xc, self.wx, self.coeffs, self.amplitude * b)
