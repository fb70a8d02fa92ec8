"""Delta-shock solutions of the limiting system for Riemann data.

The solution is

    u     = u0 + u1 H(-x + phi(t)),
    sigma = sigma0 + sigma1 H(-x + phi(t)) + e(t) delta(x - phi(t)),

with ``phi(t) = s t`` and ``e(t) = e_dot t``. Jumps are taken left minus
right, so ``[u] = u1`` and ``[sigma] = sigma1``.
"""
from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass

import numpy as np

from .core import (
    JumpConvention,
    NotApplicable,
    RiemannData,
    SigmaBarDecomposition,
    ZeroVelocityJump,
    jumps,
    to_heaviside_form,
)


def _require_limiting(data):
    if data.k != 0.0:
        raise NotApplicable("delta-shocks are constructed for the limiting system (k = 0)")


def generalized_rh(data: RiemannData):
    """Front speed and amplitude growth rate ``(phi_dot, e_dot)``."""
    _require_limiting(data)
    du, ds, dh = jumps(data, JumpConvention.LEFT_MINUS_RIGHT)
    if du == 0.0:
        raise ZeroVelocityJump("generalized R-H conditions need u_L != u_R")
    return (dh - ds) / du, ds * ds / du


@dataclass(frozen=True)
class DeltaShockSolution:
    data: RiemannData
    s: float
    e_dot: float

    def phi(self, t):
        return self.s * np.asarray(t, dtype=float)

    def e(self, t):
        return self.e_dot * np.asarray(t, dtype=float)

    @property
    def heaviside(self) -> SigmaBarDecomposition:
        return to_heaviside_form(self.data)

    def evaluate(self, x, t):
        """Bounded parts ``(u, sigma_bar)`` at points off the front.

        Points exactly on the front get the average of the two traces.
        """
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        xi = x - self.s * t
        L, R = self.data.left, self.data.right
        wl = np.where(xi < 0, 1.0, np.where(xi > 0, 0.0, 0.5))
        return wl * L.u + (1 - wl) * R.u, wl * L.sigma + (1 - wl) * R.sigma


def build_delta_shock(data: RiemannData) -> DeltaShockSolution:
    s, e_dot = generalized_rh(data)
    return DeltaShockSolution(data, s, e_dot)


@dataclass(frozen=True)
class AdmissibilityReport:
    lax_ok: bool
    overcompressive: bool
    raw_chain: bool
    simplified: bool
    details: str

    def to_dict(self):
        return {
            "lax_ok": self.lax_ok,
            "overcompressive": self.overcompressive,
            "raw_chain": self.raw_chain,
            "simplified": self.simplified,
            "details": self.details,
        }


def admissibility(data: RiemannData) -> AdmissibilityReport:
    """Overcompressivity ``u0 < phi_dot < u0 + u1`` and its simplified form.

    ``overcompressive`` is the raw chain; ``simplified`` is
    ``u1 > 0 and -u1/2 < sigma1/u1 < u1/2``. Strict inequalities throughout.
    """
    _require_limiting(data)
    h = to_heaviside_form(data)
    if h.u1 == 0.0:
        return AdmissibilityReport(False, False, False, False, "u1 = 0: no front")
    phi_dot, _ = generalized_rh(data)
    raw = h.u0 < phi_dot < h.u0 + h.u1
    ratio = h.sigma1 / h.u1
    simplified = h.u1 > 0 and -h.u1 / 2 < ratio < h.u1 / 2
    details = f"{h.u0!r} < {phi_dot!r} < {h.u0 + h.u1!r}"
    return AdmissibilityReport(h.u1 > 0, raw, raw, simplified, details)


class SolutionClass(enum.Enum):
    CONSTANT_STATE = "ConstantState"
    CLASSICAL_VOLPERT_SHOCK = "ClassicalVolpertShock"
    DELTA_SHOCK = "DeltaShock"
    DEGENERATE_NO_FAMILY = "DegenerateNoFamilySolution"
    # [sigma] = 0 with u_L < u_R falls outside the classes above
    NON_LAX_SHOCK = "NonLaxShock"


@dataclass(frozen=True)
class RiemannClassification:
    kind: SolutionClass
    speed: float | None = None
    e_dot: float | None = None
    admissibility: AdmissibilityReport | None = None

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "speed": self.speed,
            "e_dot": self.e_dot,
            "admissibility": None if self.admissibility is None else self.admissibility.to_dict(),
        }


def classify_riemann(data: RiemannData) -> RiemannClassification:
    _require_limiting(data)
    L, R = data.left, data.right
    if L == R:
        return RiemannClassification(SolutionClass.CONSTANT_STATE)
    if L.u == R.u:
        return RiemannClassification(SolutionClass.DEGENERATE_NO_FAMILY)
    s, e_dot = generalized_rh(data)
    if L.sigma == R.sigma:
        if L.u > R.u:
            return RiemannClassification(SolutionClass.CLASSICAL_VOLPERT_SHOCK, s, 0.0)
        return RiemannClassification(SolutionClass.NON_LAX_SHOCK, s, 0.0, admissibility(data))
    return RiemannClassification(SolutionClass.DELTA_SHOCK, s, e_dot, admissibility(data))


PROFILE_COLUMNS = ("x", "t", "u", "sigma_bar")


def write_profile(csv_path, json_path, sol: DeltaShockSolution, xs, ts):
    """Profile CSV over the grid plus a sidecar with front position and e(t)."""
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_COLUMNS)
        for t in ts:
            u, sb = sol.evaluate(xs, t)
            for x, uu, ss in zip(xs, u, sb):
                w.writerow([repr(float(x)), repr(float(t)), repr(float(uu)), repr(float(ss))])
    side = {
        "format_version": 1,
        "s": sol.s,
        "e_dot": sol.e_dot,
        "front": [{"t": float(t), "phi": float(sol.phi(t)), "e": float(sol.e(t))} for t in ts],
    }
    with open(json_path, "w") as fh:
        json.dump(side, fh, indent=2, sort_keys=True)
        fh.write("\n")
