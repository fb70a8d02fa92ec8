"""Phase-space types and jump conventions shared by every module.

The limiting system is

    u_t + u u_x - sigma_x = 0,
    sigma_t + u sigma_x = 0,

and its parent has the extra term ``-k**2 u_x`` in the second equation.
A :class:`RiemannData` with ``k == 0`` selects the limiting system.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class NcrsError(Exception):
    """Base class for library errors."""


class ZeroVelocityJump(NcrsError, ZeroDivisionError):
    """Raised when a formula divides by the velocity jump and u_L == u_R."""


class LaxViolation(NcrsError, ValueError):
    """Raised when a shock query violates u_R < u_L."""


class InvalidFamily(NcrsError, ValueError):
    """Raised for a shock-curve family that does not exist for the given k."""


class NotApplicable(NcrsError, ValueError):
    """Raised when an operation is only defined for the limiting system."""


class NonAdmissible(NcrsError, ValueError):
    """Raised when the regularized ansatz would need an imaginary amplitude."""


@dataclass(frozen=True)
class State:
    """A point (u, sigma) of phase space: velocity and stress."""

    u: float
    sigma: float

    def __post_init__(self):
        u = float(self.u)
        sigma = float(self.sigma)
        if not (math.isfinite(u) and math.isfinite(sigma)):
            raise ValueError(f"state components must be finite, got ({self.u}, {self.sigma})")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "sigma", sigma)

    def __iter__(self):
        yield self.u
        yield self.sigma


@dataclass(frozen=True)
class RiemannData:
    left: State
    right: State
    k: float = 0.0

    def __post_init__(self):
        k = float(self.k)
        if not math.isfinite(k) or k < 0.0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        object.__setattr__(self, "k", k)
        for side in ("left", "right"):
            v = getattr(self, side)
            if not isinstance(v, State):
                object.__setattr__(self, side, State(*v))

    @classmethod
    def from_values(cls, uL, sigmaL, uR, sigmaR, k=0.0):
        return cls(State(uL, sigmaL), State(uR, sigmaR), k)

    @property
    def is_constant(self):
        return self.left == self.right


class JumpConvention(enum.Enum):
    RIGHT_MINUS_LEFT = "right-minus-left"
    LEFT_MINUS_RIGHT = "left-minus-right"


@dataclass(frozen=True)
class SigmaBarDecomposition:
    """Heaviside form u = u0 + u1 H(-x), sigma = sigma0 + sigma1 H(-x)."""

    sigma0: float
    sigma1: float
    u0: float
    u1: float
    # left traces as given; u0 + u1 need not round back to them
    u_left: float | None = field(default=None, compare=False, repr=False)
    sigma_left: float | None = field(default=None, compare=False, repr=False)

    def to_riemann(self, k=0.0):
        uL = self.u0 + self.u1 if self.u_left is None else self.u_left
        sL = self.sigma0 + self.sigma1 if self.sigma_left is None else self.sigma_left
        return RiemannData(State(uL, sL), State(self.u0, self.sigma0), k)

    @property
    def c(self):
        """Plateau value 1/2 - sigma1/u1**2 of the regularized Heaviside."""
        if self.u1 == 0.0:
            raise ZeroVelocityJump("plateau constant needs u1 != 0")
        return 0.5 - self.sigma1 / (self.u1 * self.u1)


def jumps(data: RiemannData, conv: JumpConvention):
    """Return ([u], [sigma], [u**2/2]) under the requested orientation."""
    if conv is JumpConvention.RIGHT_MINUS_LEFT:
        a, b = data.right, data.left
    else:
        a, b = data.left, data.right
    return a.u - b.u, a.sigma - b.sigma, 0.5 * (a.u * a.u - b.u * b.u)


def to_heaviside_form(data: RiemannData) -> SigmaBarDecomposition:
    return SigmaBarDecomposition(
        sigma0=data.right.sigma,
        sigma1=data.left.sigma - data.right.sigma,
        u0=data.right.u,
        u1=data.left.u - data.right.u,
        u_left=data.left.u,
        sigma_left=data.left.sigma,
    )


def from_heaviside_form(dec: SigmaBarDecomposition, k=0.0) -> RiemannData:
    return dec.to_riemann(k)
