"""Path-dependent Rankine-Hugoniot conditions and shock curves.

Jumps here are right minus left. For both systems the shock speed is
``s = ([u^2/2] - [sigma]) / [u]``; the path only enters through the second
row of the R-H condition.
"""
from __future__ import annotations

import csv
import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .convergence import ConvergenceReport, check_ladder, loglog_slope
from .core import (
    InvalidFamily,
    JumpConvention,
    LaxViolation,
    NotApplicable,
    RiemannData,
    State,
    ZeroVelocityJump,
    jumps,
)
from .dlm_paths import DlmPath, PathKind
from .quadrature import QuadratureSpec, composite_nodes, piece_edges


class Family(enum.Enum):
    S1 = "S1"
    S2 = "S2"


class Kind(enum.Enum):
    CONSTANT_STATE = "ConstantState"
    NO_SHOCK = "NoShock"
    BURGERS_SHOCK = "BurgersShock"
    NOT_A_SHOCK = "NotAShock"
    IMPOSSIBLE = "Impossible"
    TRIVIAL_CONSTANT_SIGMA = "TrivialConstantSigma"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    speed: float | None = None
    witness: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self):
        return {"kind": self.kind.value, "speed": self.speed, "witness": dict(self.witness), "reason": self.reason}


@dataclass(frozen=True)
class ShockCurveSpec:
    system_k: float
    path_kind: PathKind
    family: Family
    left: State

    def __post_init__(self):
        if not math.isfinite(self.system_k) or self.system_k < 0:
            raise ValueError("system_k must be >= 0")
        object.__setattr__(self, "path_kind", PathKind(self.path_kind))
        object.__setattr__(self, "family", Family(self.family))
        if self.path_kind is PathKind.STRAIGHT_LINE:
            raise InvalidFamily("the straight-line path carries no shock curve")
        if self.system_k == 0.0 and self.family is Family.S2:
            raise InvalidFamily("k = 0 has a single curve; request family S1")


@dataclass(frozen=True)
class RHResidual:
    row1: float
    row2: float

    def max_abs(self):
        return max(abs(self.row1), abs(self.row2))


def shock_speed(data: RiemannData) -> float:
    du, ds, dh = jumps(data, JumpConvention.RIGHT_MINUS_LEFT)
    if du == 0.0:
        raise ZeroVelocityJump("shock speed undefined for u_L == u_R")
    return (dh - ds) / du


def rh_residual(path: DlmPath, data: RiemannData, s: float, quad: QuadratureSpec = QuadratureSpec()) -> RHResidual:
    """Both rows of the integral of (-s Id + A(phi)) phi_t over [0, 1].

    ``A = [[u, -1], [-k^2, u]]``; k = 0 gives the limiting system.
    """
    vL, vR = data.left, data.right
    if vL.u <= vR.u and vL != vR:
        warnings.warn("u_L <= u_R: not a Lax-admissible shock", stacklevel=2)
    t, w = composite_nodes(piece_edges(0.0, 1.0, path.breakpoints), quad.order, quad.panels)
    p1 = np.broadcast_to(path.phi1(t, vL, vR), t.shape)
    d1, d2 = (np.broadcast_to(d, t.shape) for d in path.derivative(t, vL, vR))
    if not (np.all(np.isfinite(p1)) and np.all(np.isfinite(d1)) and np.all(np.isfinite(d2))):
        raise FloatingPointError("non-finite path value at a quadrature node")
    k2 = data.k * data.k
    row1 = np.dot(w, (p1 - s) * d1 - d2)
    row2 = np.dot(w, -k2 * d1 + (p1 - s) * d2)
    return RHResidual(float(row1), float(row2))


_LEADING = {PathKind.PHI_EXAMPLE: 4.0, PathKind.PHI_TILDE_EXAMPLE: 2.0}


def sigma_quadratic_roots(du: float, k: float, path_kind: PathKind):
    """Roots of ``a [s]^2 + du^2 [s] - a k^2 du^2 = 0`` (a = 4 or 2).

    Returns ``(S1, S2)``: the larger root, which vanishes as k -> 0, then the
    smaller one, which tends to ``-du^2 / a``. The large-magnitude root is
    formed first and the other recovered from the product of roots, so no
    subtraction of nearly equal numbers occurs.
    """
    path_kind = PathKind(path_kind)
    if path_kind not in _LEADING:
        raise InvalidFamily("roots exist only for the two example paths")
    if du == 0.0:
        raise ZeroVelocityJump("quadratic is degenerate for du == 0")
    if not k > 0.0:
        raise ValueError("k must be > 0")
    a = _LEADING[path_kind]
    b = du * du
    c = -a * k * k * b
    # sqrt(b^2 - 4 a c) = |du| sqrt(du^2 + 4 a^2 k^2)
    root_disc = abs(du) * math.sqrt(b + 4.0 * a * a * k * k)
    q = -0.5 * (b + root_disc)
    s2 = q / a
    s1 = c / q
    return s1, s2


def _check_lax(left: State, u: float):
    if not u < left.u:
        raise LaxViolation(f"shock curves need u < u_L (got u={u}, u_L={left.u})")


def shock_curve_sigma(spec: ShockCurveSpec, u: float) -> float:
    _check_lax(spec.left, u)
    du = u - spec.left.u
    if spec.system_k == 0.0:
        if spec.path_kind is PathKind.PHI_EXAMPLE:
            return spec.left.sigma - 0.25 * du * du
        return spec.left.sigma - 0.5 * du * du
    s1, s2 = sigma_quadratic_roots(du, spec.system_k, spec.path_kind)
    return spec.left.sigma + (s1 if spec.family is Family.S1 else s2)


def k_limit_report(left: State, u: float, path_kind: PathKind, k_ladder) -> ConvergenceReport:
    """Distance of the S2 curve to the k = 0 curve along a decreasing k ladder.

    ``errors`` holds ``|sigma_S2(k) - sigma_limit|``; ``extra`` carries the
    S1 jump sizes, which tend to zero, and their fitted slope.
    """
    ks = check_ladder(k_ladder, "k_ladder")
    path_kind = PathKind(path_kind)
    limit = shock_curve_sigma(ShockCurveSpec(0.0, path_kind, Family.S1, left), u)
    d_s2, d_s1 = [], []
    for k in ks:
        s2 = shock_curve_sigma(ShockCurveSpec(k, path_kind, Family.S2, left), u)
        s1 = shock_curve_sigma(ShockCurveSpec(k, path_kind, Family.S1, left), u)
        d_s2.append(abs(s2 - limit))
        d_s1.append(abs(s1 - left.sigma))
    return ConvergenceReport(
        ladder=ks,
        errors=d_s2,
        slope=loglog_slope(ks, d_s2),
        extra={
            "sigma_limit": limit,
            "s1_jumps": d_s1,
            "s1_slope": loglog_slope(ks, d_s1),
            "path_kind": path_kind.value,
        },
    )


def volpert_shock_exists(data: RiemannData) -> Classification:
    """Shock admissibility under the straight-line (Volpert) product.

    The two R-H relations are ``-s[u] + [u^2/2] - [sigma] = 0`` and
    ``(-s + (u_L + u_R)/2)[sigma] = 0``. With [sigma] != 0 the second forces
    ``s = (u_L + u_R)/2`` and the first then forces [sigma] = 0.
    """
    if data.is_constant:
        return Classification(Kind.CONSTANT_STATE, reason="v_L == v_R")
    du, ds, _ = jumps(data, JumpConvention.RIGHT_MINUS_LEFT)
    if ds != 0.0:
        return Classification(
            Kind.NO_SHOCK,
            witness={"sigma_jump": ds},
            reason="the Volpert relations force [sigma] = 0",
        )
    if data.left.u > data.right.u:
        return Classification(Kind.BURGERS_SHOCK, speed=0.5 * (data.left.u + data.right.u))
    return Classification(Kind.NOT_A_SHOCK, reason="u_L <= u_R violates Lax")


def rarefaction_possible(data: RiemannData) -> Classification:
    if data.k != 0.0:
        raise NotApplicable("rarefaction check is for the limiting system (k = 0)")
    if data.is_constant:
        return Classification(Kind.CONSTANT_STATE, reason="v_L == v_R")
    if data.left.sigma != data.right.sigma:
        return Classification(
            Kind.IMPOSSIBLE,
            witness={"sigma_jump": data.right.sigma - data.left.sigma},
            reason="incomplete eigensystem forces sigma' = 0",
        )
    return Classification(Kind.TRIVIAL_CONSTANT_SIGMA, reason="sigma constant; u may fan")


CURVE_COLUMNS = ("u", "sigma", "family", "k", "path_kind")


def sample_shock_curves(left: State, ks, path_kinds, u_values):
    """Rows ``(u, sigma, family, k, path_kind)`` for plotting.

    k = 0 contributes its single curve (family S1); k > 0 both branches.
    """
    rows = []
    for pk in path_kinds:
        pk = PathKind(pk)
        for k in ks:
            fams = [Family.S1] if k == 0.0 else [Family.S1, Family.S2]
            for fam in fams:
                spec = ShockCurveSpec(float(k), pk, fam, left)
                for u in u_values:
                    rows.append((float(u), shock_curve_sigma(spec, float(u)), fam.value, float(k), pk.value))
    return rows


def write_curves_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for u, sigma, fam, k, pk in rows:
            w.writerow([repr(u), repr(sigma), fam, repr(k), pk])
