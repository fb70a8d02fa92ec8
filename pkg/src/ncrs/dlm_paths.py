"""DLM paths: construction, numerical axiom checks and path integrals.

A path maps ``(t, v_L, v_R)`` with ``t in [0, 1]`` to a state. Components
are evaluated on numpy arrays of ``t``; derivatives are supplied alongside
so that path integrals never rely on differencing.
"""
from __future__ import annotations

import csv
import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import State
from .quadrature import QuadratureSpec, composite_nodes, piece_edges


class PathKind(enum.Enum):
    STRAIGHT_LINE = "straight"
    PHI_EXAMPLE = "phi"
    PHI_TILDE_EXAMPLE = "phi-tilde"


class Component(enum.Enum):
    PHI1 = 1
    PHI2 = 2


# f(t, vL, vR) -> array shaped like t
PathFn = Callable[[np.ndarray, State, State], np.ndarray]


@dataclass(frozen=True)
class DlmPath:
    phi1: PathFn
    phi2: PathFn
    dphi1: PathFn
    dphi2: PathFn
    breakpoints: tuple = ()
    name: str = "custom"

    def __post_init__(self):
        bps = tuple(sorted(float(b) for b in self.breakpoints))
        if any(not 0.0 < b < 1.0 for b in bps):
            raise ValueError("breakpoints must lie in (0, 1)")
        object.__setattr__(self, "breakpoints", bps)

    def __call__(self, t, vL: State, vR: State):
        t = np.asarray(t, dtype=float)
        return self.phi1(t, vL, vR), self.phi2(t, vL, vR)

    def derivative(self, t, vL: State, vR: State):
        t = np.asarray(t, dtype=float)
        return self.dphi1(t, vL, vR), self.dphi2(t, vL, vR)

    @classmethod
    def from_functions(cls, phi1, phi2, dphi1, dphi2, breakpoints=(), name="custom"):
        """Wrap user callables ``f(t, vL, vR)``; derivatives are required."""
        return cls(phi1, phi2, dphi1, dphi2, tuple(breakpoints), name)


def profile_path(g1, dg1, g2, dg2, breakpoints=(), name="profile") -> DlmPath:
    """Path ``phi_i = vL_i + (vR_i - vL_i) g_i(t)`` with g_i(0)=0, g_i(1)=1.

    Any such path satisfies the endpoint and consistency axioms by
    construction. Each half is evaluated from its nearer endpoint so both
    endpoint values come out exact in floating point.
    """

    def blend(a, b, g):
        g = np.asarray(g, dtype=float)
        return np.where(g <= 0.5, a + (b - a) * g, b - (b - a) * (1.0 - g))

    def phi1(t, vL, vR):
        return blend(vL.u, vR.u, g1(t))

    def phi2(t, vL, vR):
        return blend(vL.sigma, vR.sigma, g2(t))

    def dphi1(t, vL, vR):
        return (vR.u - vL.u) * dg1(t)

    def dphi2(t, vL, vR):
        return (vR.sigma - vL.sigma) * dg2(t)

    return DlmPath(phi1, phi2, dphi1, dphi2, tuple(breakpoints), name)


def _linear(t):
    return np.asarray(t, dtype=float)


def _one(t):
    return np.ones_like(np.asarray(t, dtype=float))


def _ramp_first_half(t):
    return np.minimum(2.0 * np.asarray(t, dtype=float), 1.0)


def _ramp_first_half_d(t):
    return np.where(np.asarray(t) < 0.5, 2.0, 0.0)


def _ramp_second_half(t):
    return np.maximum(2.0 * np.asarray(t, dtype=float) - 1.0, 0.0)


def _ramp_second_half_d(t):
    return np.where(np.asarray(t) > 0.5, 2.0, 0.0)


def builtin_path(kind: PathKind) -> DlmPath:
    """The straight line and the two piecewise-linear example paths."""
    kind = PathKind(kind)
    if kind is PathKind.STRAIGHT_LINE:
        return profile_path(_linear, _one, _linear, _one, (), kind.value)
    if kind is PathKind.PHI_EXAMPLE:
        return profile_path(_ramp_first_half, _ramp_first_half_d, _linear, _one, (0.5,), kind.value)
    return profile_path(
        _ramp_first_half, _ramp_first_half_d, _ramp_second_half, _ramp_second_half_d, (0.5,), kind.value
    )


def polyline_path(t, phi1, phi2, name="polyline") -> DlmPath:
    """Path family from one sampled polyline.

    Each column is normalized to a profile running from 0 to 1, so the
    samples fix the shape and the endpoints come from the states. A column
    with equal first and last values has no shape to normalize and is
    rejected.
    """
    t = np.asarray(t, dtype=float)
    cols = [np.asarray(phi1, dtype=float), np.asarray(phi2, dtype=float)]
    if t.ndim != 1 or len(t) < 2 or any(c.shape != t.shape for c in cols):
        raise ValueError("polyline needs matching 1-d columns with at least two rows")
    if t[0] != 0.0 or t[-1] != 1.0:
        raise ValueError("polyline t must start at 0 and end at 1")
    if np.any(np.diff(t) <= 0):
        raise ValueError("polyline t must be strictly increasing")
    if not all(np.all(np.isfinite(c)) for c in [t, *cols]):
        raise ValueError("polyline values must be finite")
    profiles = []
    for c in cols:
        span = c[-1] - c[0]
        if span == 0.0:
            raise ValueError("polyline column has equal endpoints; cannot normalize")
        profiles.append((c - c[0]) / span)
    slopes = [np.diff(g) / np.diff(t) for g in profiles]

    def make(g, sl):
        def f(tt):
            return np.interp(tt, t, g)

        def df(tt):
            idx = np.clip(np.searchsorted(t, tt, side="right") - 1, 0, len(sl) - 1)
            return sl[idx]

        return f, df

    g1, dg1 = make(profiles[0], slopes[0])
    g2, dg2 = make(profiles[1], slopes[1])
    return profile_path(g1, dg1, g2, dg2, tuple(t[1:-1]), name)


def load_polyline_csv(path) -> DlmPath:
    """Read a polyline path from CSV with header ``t,phi1,phi2``."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"t", "phi1", "phi2"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"polyline CSV missing columns: {sorted(missing)}")
        rows = [(float(r["t"]), float(r["phi1"]), float(r["phi2"])) for r in reader]
    if not rows:
        raise ValueError("polyline CSV has no rows")
    t, p1, p2 = (np.array(c) for c in zip(*rows))
    return polyline_path(t, p1, p2, name=str(path))


def write_polyline_csv(path, t, phi1, phi2):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "phi1", "phi2"])
        for row in zip(t, phi1, phi2):
            w.writerow([repr(float(v)) for v in row])


@dataclass
class PathAxiomReport:
    endpoints_ok: bool
    consistency_ok: bool
    lipschitz_estimate: float
    max_violation: float
    note: str = field(
        default="Lipschitz axiom checked on sampled perturbations only; not a certified bound."
    )

    def passes(self, tol):
        return self.max_violation <= tol


def _finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise FloatingPointError("path component returned a non-finite value")


def _interior_samples(path, n):
    edges = piece_edges(0.0, 1.0, path.breakpoints)
    t, _ = composite_nodes(edges, n)
    return t


def validate_axioms(
    path: DlmPath,
    probe_states: Sequence[tuple],
    tol: float,
    samples: int = 33,
    perturbations: int = 8,
    seed: int = 0,
) -> PathAxiomReport:
    """Check the three DLM axioms numerically on ``probe_states`` pairs.

    The third axiom is estimated as the largest ratio
    ``|phi_t(t; v) - phi_t(t; w)| / |(v_L - w_L) - (v_R - w_R)|`` over sampled
    ``t`` and random perturbed pairs ``w`` (plus every other probe pair).
    """
    if not probe_states:
        raise ValueError("probe_states must be non-empty")
    if tol <= 0:
        raise ValueError("tol must be positive")
    pairs = [(State(*a), State(*b)) for a, b in probe_states]

    ends = np.array([0.0, 1.0])
    end_viol = 0.0
    for vL, vR in pairs:
        p1, p2 = path(ends, vL, vR)
        _finite(p1, p2)
        end_viol = max(
            end_viol,
            abs(p1[0] - vL.u), abs(p2[0] - vL.sigma),
            abs(p1[1] - vR.u), abs(p2[1] - vR.sigma),
        )

    ts = np.linspace(0.0, 1.0, samples)
    cons_viol = 0.0
    for v in {s for pair in pairs for s in pair}:
        p1, p2 = path(ts, v, v)
        _finite(p1, p2)
        cons_viol = max(cons_viol, float(np.max(np.abs(p1 - v.u))), float(np.max(np.abs(p2 - v.sigma))))

    tin = _interior_samples(path, max(2, samples // 4))
    rng = np.random.default_rng(seed)

    def dvec(vL, vR):
        d1, d2 = path.derivative(tin, vL, vR)
        d1 = np.broadcast_to(d1, tin.shape)
        d2 = np.broadcast_to(d2, tin.shape)
        _finite(d1, d2)
        return d1, d2

    lip = 0.0
    others = []
    for vL, vR in pairs:
        scale = 0.1 * (1.0 + max(abs(vL.u), abs(vL.sigma), abs(vR.u), abs(vR.sigma)))
        for _ in range(perturbations):
            h = rng.uniform(-scale, scale, size=4)
            others.append(((vL, vR), (State(vL.u + h[0], vL.sigma + h[1]), State(vR.u + h[2], vR.sigma + h[3]))))
    others.extend(itertools.combinations(pairs, 2))
    for (vL, vR), (wL, wR) in others:
        den = math.hypot((vL.u - wL.u) - (vR.u - wR.u), (vL.sigma - wL.sigma) - (vR.sigma - wR.sigma))
        a1, a2 = dvec(vL, vR)
        b1, b2 = dvec(wL, wR)
        num = float(np.max(np.hypot(a1 - b1, a2 - b2)))
        if den <= 1e-12:
            if num > 1e-12:
                lip = math.inf
            continue
        lip = max(lip, num / den)

    return PathAxiomReport(
        endpoints_ok=end_viol <= tol,
        consistency_ok=cons_viol <= tol,
        lipschitz_estimate=lip,
        max_violation=max(end_viol, cons_viol),
    )


def _nodes(path, quad):
    return composite_nodes(piece_edges(0.0, 1.0, path.breakpoints), quad.order, quad.panels)


def path_coupling_integral(path: DlmPath, vL: State, vR: State, quad: QuadratureSpec = QuadratureSpec()):
    """Integral over [0, 1] of phi1 * d(phi2)/dt, piece by piece."""
    t, w = _nodes(path, quad)
    p1 = np.broadcast_to(path.phi1(t, vL, vR), t.shape)
    d2 = np.broadcast_to(path.dphi2(t, vL, vR), t.shape)
    _finite(p1, d2)
    return float(np.dot(w, p1 * d2))


def path_component_integral(
    path: DlmPath, vL: State, vR: State, which: Component, quad: QuadratureSpec = QuadratureSpec()
):
    t, w = _nodes(path, quad)
    f = path.phi1 if Component(which) is Component.PHI1 else path.phi2
    vals = np.broadcast_to(f(t, vL, vR), t.shape)
    _finite(vals)
    return float(np.dot(w, vals))
