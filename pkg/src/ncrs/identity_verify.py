"""Numerical verification of the integral identities of a delta-shock.

For a test function theta the two residuals are

    id1 = | iint (u theta_t + (u^2/2 - sigma_bar) theta_x) + int u(x,0) theta(x,0) |
    id2 = | int (sigma1 phi_dot - sigma1 u_hat) theta(phi(t), t) dt
            - int e(t) d/dt[theta(phi(t), t)] dt |

The plane is split along the front x = phi(t) and the test function box, so
each Gauss rule sees a smooth integrand.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import JumpConvention, NotApplicable, RiemannData, ZeroVelocityJump, jumps, to_heaviside_form
from .delta_shock import DeltaShockSolution, generalized_rh
from .quadrature import composite_nodes, gauss_legendre
from .testfunctions import TestFunction, bump, bump_d

# Few wide panels of high order beat many narrow ones here: the bump
# converges slowly near its support ends. t gets twice the x panels.
DEFAULT_ORDER = 64
DEFAULT_PANELS = 4


def volpert_average(left_trace: float, right_trace: float) -> float:
    """Integral over [0, 1] of the straight line between the traces."""
    return 0.5 * (left_trace + right_trace)


@dataclass(frozen=True)
class IdentityResidualPair:
    id1: float
    id2: float

    def max(self):
        return max(self.id1, self.id2)


def _t_edges(sol, ta, tb, xa, xb, panels):
    """Uniform t panels, refined likewise on the window where the front is inside."""
    edges = set(np.linspace(ta, tb, panels + 1).tolist())
    if sol.s != 0.0:
        lo, hi = sorted((xa / sol.s, xb / sol.s))
        lo, hi = max(lo, ta), min(hi, tb)
        if lo < hi:
            edges.update(np.linspace(lo, hi, panels + 1).tolist())
    return np.array(sorted(edges))


def _front_rule(sol, theta, order, panels):
    """t-rule on the part of [ta, tb] where the front lies inside the x-range."""
    xa, xb, ta, tb = theta.box
    lo, hi = ta, tb
    if sol.s != 0.0:
        t1, t2 = sorted((xa / sol.s, xb / sol.s))
        lo, hi = max(lo, t1), min(hi, t2)
    elif not xa < 0.0 < xb:
        hi = lo
    if hi <= lo:
        return np.zeros(0), np.zeros(0)
    return composite_nodes([lo, hi], order, 2 * panels)


def _split_rule(lo, hi, order, panels):
    """Rule on [lo, hi] per row; lo, hi are column arrays (n, 1)."""
    gx, gw = gauss_legendre(order)
    h = (hi - lo) / panels
    xs, ws = [], []
    for j in range(panels):
        a = lo + j * h
        xs.append(a + 0.5 * h * (1.0 + gx))
        ws.append(0.5 * h * gw * np.ones_like(a))
    return np.concatenate(xs, axis=1), np.concatenate(ws, axis=1)


def _space_factor(theta, X):
    """G(X) = b(X) P(X) and G'(X) from a single exponential per node."""
    G = np.zeros_like(X)
    dG = np.zeros_like(X)
    m = np.abs(X) < 1.0
    r = X[m]
    q = 1.0 - r * r
    b = np.exp(1.0 - 1.0 / q)
    c = (1.0, *theta.coeffs)
    P = np.polynomial.polynomial.polyval(r, c)
    dP = np.polynomial.polynomial.polyval(r, np.polynomial.polynomial.polyder(c)) if theta.coeffs else 0.0
    G[m] = b * P
    dG[m] = b * (dP - 2.0 * r / (q * q) * P)
    return G, dG


def identity_residuals(sol: DeltaShockSolution, theta: TestFunction, order=DEFAULT_ORDER,
                       panels=DEFAULT_PANELS) -> IdentityResidualPair:
    xa, xb, ta, tb = theta.box
    L, R = sol.data.left, sol.data.right
    fL = 0.5 * L.u * L.u - L.sigma
    fR = 0.5 * R.u * R.u - R.sigma

    t, wt = composite_nodes(_t_edges(sol, ta, tb, xa, xb, 2 * panels), order)
    front = np.clip(sol.phi(t), xa, xb)[:, None]
    col_a = np.full_like(front, xa)
    col_b = np.full_like(front, xb)
    # theta is separable, so the t factors are evaluated once per row
    Tn = (t - theta.tc) / theta.wt
    Bt = (theta.amplitude / theta.wt * bump_d(Tn) * wt)[:, None]
    Bx = (theta.amplitude / theta.wx * bump(Tn) * wt)[:, None]

    vol = 0.0
    for lo, hi, u, f in ((col_a, front, L.u, fL), (front, col_b, R.u, fR)):
        x, WX = _split_rule(lo, hi, order, panels)
        G, dG = _space_factor(theta, (x - theta.xc) / theta.wx)
        vol += float(np.sum(WX * (u * G * Bt + f * dG * Bx)))

    init = 0.0
    if ta == 0.0:
        for lo, hi, u in ((xa, min(max(0.0, xa), xb), L.u), (max(min(0.0, xb), xa), xb, R.u)):
            if hi > lo:
                x, w = composite_nodes([lo, hi], order, panels)
                init += u * float(np.dot(w, theta(x, np.zeros_like(x))))
    id1 = abs(vol + init)

    h = to_heaviside_form(sol.data)
    u_hat = volpert_average(L.u, R.u)
    tf, wf = _front_rule(sol, theta, order, panels)
    xf = sol.phi(tf)
    th_f = theta(xf, tf)
    th_t, th_x = theta.partials(xf, tf)
    dth_f = th_t + sol.s * th_x
    transport = h.sigma1 * (sol.s - u_hat) * float(np.dot(wf, th_f))
    tangential = float(np.dot(wf, sol.e(tf) * dth_f))
    id2 = abs(transport - tangential)
    return IdentityResidualPair(id1, id2)


def front_mass(sol: DeltaShockSolution, theta: TestFunction, order=DEFAULT_ORDER, panels=DEFAULT_PANELS):
    """|int theta(phi(t), t) dt| along the solution's front."""
    t, w = _front_rule(sol, theta, order, panels)
    return abs(float(np.dot(w, theta(sol.phi(t), t))))


def analytic_balance(data: RiemannData) -> float:
    """|sigma1 phi_dot - sigma1 (u0 + u1/2) + e_dot|, zero for the exact rates."""
    if data.k != 0.0:
        raise NotApplicable("balance is for the limiting system (k = 0)")
    du, ds, _ = jumps(data, JumpConvention.LEFT_MINUS_RIGHT)
    if du == 0.0:
        raise ZeroVelocityJump("balance needs u1 != 0")
    phi_dot, e_dot = generalized_rh(data)
    h = to_heaviside_form(data)
    return abs(h.sigma1 * phi_dot - h.sigma1 * (h.u0 + 0.5 * h.u1) + e_dot)


def verification_report(sol: DeltaShockSolution, thetas, tol=1e-10):
    """Per-theta residuals, pass/fail and the front mass as a diagnostic."""
    rows = []
    for th in thetas:
        r = identity_residuals(sol, th)
        rows.append({
            "theta": th.to_config(),
            "id1": r.id1,
            "id2": r.id2,
            "pass": r.max() <= tol,
            "front_mass": front_mass(sol, th),
        })
    return {
        "format_version": 1,
        "tol": tol,
        "s": sol.s,
        "e_dot": sol.e_dot,
        "passed": all(r["pass"] for r in rows),
        "residuals": rows,
    }


def write_report(path, report):
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")

