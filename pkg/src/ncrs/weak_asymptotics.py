"""Mollifier-regularized ansatz and its weak residuals.

Pieces, for a mollifier omega supported in (-1, 1):

    R(x, eps)     = eps**-0.5 * omega((x - 2 eps) / eps)     support (eps, 3 eps)
    delta(x, eps) = eps**-1   * omega((x + 2 eps) / eps)     support (-3 eps, -eps)
    H(x, eps)     = 0 | c on [-3 eps, 3 eps] | 1, quintic joins on the gaps

and the ansatz

    u     = u0 + u1 H(-x + phi, eps) + p(t) R(x - phi, eps)
    sigma = sigma0 + sigma1 H(-x + phi, eps) + e(t) delta(x - phi, eps)

with ``p(t) = sqrt(2 e(t) / omega0)``. The pointwise work is done by
:mod:`ncrs.kernels`.
"""
from __future__ import annotations

import csv
import enum
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import kernels
from .convergence import check_ladder, loglog_slope
from .core import NonAdmissible, NotApplicable, RiemannData, SigmaBarDecomposition, ZeroVelocityJump, to_heaviside_form
from .delta_shock import admissibility, generalized_rh
from .quadrature import composite_nodes, gauss_legendre, graded_edges
from .testfunctions import TestFunction, TestFunction1D


class ResolutionError(RuntimeError):
    """The quadrature grid cannot resolve the regularization scale."""


class MollifierKind(enum.Enum):
    BUMP = "bump"
    SHARP_BUMP = "sharp-bump"


_STEEPNESS = {MollifierKind.BUMP: 1.0, MollifierKind.SHARP_BUMP: 2.0}


@dataclass(frozen=True)
class Mollifier:
    """``omega(x) = exp(-a / (1 - x^2)) / norm`` on (-1, 1)."""

    kind: MollifierKind
    a: float
    norm: float
    omega0: float

    def __call__(self, x):
        return kernels.mollifier(x, self.a, self.norm)

    def derivative(self, x):
        return kernels.mollifier_d(x, self.a, self.norm)


@lru_cache(maxsize=None)
def make_mollifier(kind=MollifierKind.BUMP) -> Mollifier:
    kind = MollifierKind(kind)
    a = _STEEPNESS[kind]

    def raw(x):
        return math.exp(-a / (1.0 - x * x)) if abs(x) < 1.0 else 0.0

    opts = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
    norm = integrate.quad(raw, -1.0, 1.0, **opts)[0]
    omega0 = integrate.quad(lambda x: (raw(x) / norm) ** 2, -1.0, 1.0, **opts)[0]
    return Mollifier(kind, a, norm, omega0)


# -- regularized pieces ------------------------------------------------------

def R(x, eps, moll):
    return moll((np.asarray(x, dtype=float) - 2.0 * eps) / eps) / math.sqrt(eps)


def R_x(x, eps, moll):
    return moll.derivative((np.asarray(x, dtype=float) - 2.0 * eps) / eps) / eps**1.5


def delta_eps(x, eps, moll):
    return moll((np.asarray(x, dtype=float) + 2.0 * eps) / eps) / eps


def delta_eps_x(x, eps, moll):
    return moll.derivative((np.asarray(x, dtype=float) + 2.0 * eps) / eps) / (eps * eps)


def H_eps(x, eps, c):
    return kernels.heps(x, eps, c)


def H_eps_x(x, eps, c):
    return kernels.heps_d(x, eps, c)


# -- expansion lemma ---------------------------------------------------------

class LemmaTerm(enum.Enum):
    R = "R"
    R_X = "R_x"
    R_SQ = "R^2"
    R_RX = "R R_x"
    DELTA = "delta"
    DELTA_X = "delta_x"
    R_DELTA = "R delta"
    R_DELTA_X = "R delta_x"
    H = "H"
    H_X = "H_x"
    H_HX = "H H_x"
    H_RX_REFL = "H(x) R_x(-x)"
    R_REFL_HX = "R(-x) H_x(x)"
    H_DELTAX_REFL = "H(x) delta_x(-x)"


EXACT_ZERO_TERMS = (LemmaTerm.R_DELTA, LemmaTerm.R_DELTA_X)


def term_density(term: LemmaTerm, x, eps, moll: Mollifier, c):
    """Pointwise value of a Lemma term.

    For the reflected terms the x-derivative acts on the composed function,
    e.g. ``R_x(-x)`` means ``d/dx [R(-x)] = -R'(-x)``.
    """
    x = np.asarray(x, dtype=float)
    T = LemmaTerm
    if term is T.R:
        return R(x, eps, moll)
    if term is T.R_X:
        return R_x(x, eps, moll)
    if term is T.R_SQ:
        return R(x, eps, moll) ** 2
    if term is T.R_RX:
        return R(x, eps, moll) * R_x(x, eps, moll)
    if term is T.DELTA:
        return delta_eps(x, eps, moll)
    if term is T.DELTA_X:
        return delta_eps_x(x, eps, moll)
    if term is T.R_DELTA:
        return R(x, eps, moll) * delta_eps(x, eps, moll)
    if term is T.R_DELTA_X:
        return R(x, eps, moll) * delta_eps_x(x, eps, moll)
    if term is T.H:
        return H_eps(x, eps, c)
    if term is T.H_X:
        return H_eps_x(x, eps, c)
    if term is T.H_HX:
        return H_eps(x, eps, c) * H_eps_x(x, eps, c)
    if term is T.H_RX_REFL:
        return -H_eps(x, eps, c) * R_x(-x, eps, moll)
    if term is T.R_REFL_HX:
        return R(-x, eps, moll) * H_eps_x(x, eps, c)
    if term is T.H_DELTAX_REFL:
        return -H_eps(x, eps, c) * delta_eps_x(-x, eps, moll)
    raise ValueError(term)


_BAND = np.array([-4.0, -3.0, -1.0, 1.0, 3.0, 4.0])
# The bump is flat to all orders at its support ends, which slows Gauss
# convergence; 64 nodes per cell put pairings at ~1e-12 relative.
_NODES_PER_EPS = 64


def _band_rule(lo, hi, eps, outer_panels=16):
    """Composite rule on [lo, hi]: _NODES_PER_EPS nodes per eps-wide band cell, coarse outside."""
    band = _BAND * eps
    edges = np.unique(np.clip(np.concatenate([[lo, hi], band]), lo, hi))
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        if a >= band[0] and b <= band[-1]:
            panels = max(1, int(round((b - a) / eps)))
        else:
            panels = outer_panels
        x, w = composite_nodes([a, b], _NODES_PER_EPS, panels)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def expansion_term(term: LemmaTerm, moll: Mollifier, theta: TestFunction1D, eps: float, c: float = 0.5):
    """The pairing <term(., eps), theta> by band-aligned quadrature."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    term = LemmaTerm(term)
    lo, hi = theta.support
    x, w = _band_rule(lo, hi, eps)
    vals = term_density(term, x, eps, moll, c) * theta(x)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite integrand in Lemma pairing")
    return float(np.dot(w, vals))


def lemma_limit(term: LemmaTerm, moll: Mollifier, theta: TestFunction1D, c: float = 0.5):
    """The eps -> 0 pairing stated by the Lemma."""
    T = LemmaTerm
    term = LemmaTerm(term)
    th0 = float(theta(0.0))
    dth0 = float(theta.derivative(0.0))
    if term in (T.R, T.R_X, T.R_DELTA, T.R_DELTA_X, T.H_RX_REFL, T.R_REFL_HX):
        return 0.0
    if term is T.R_SQ:
        return moll.omega0 * th0
    if term is T.R_RX:
        return -0.5 * moll.omega0 * dth0
    if term in (T.DELTA, T.H_X):
        return th0
    if term is T.DELTA_X:
        return -dth0
    if term is T.H_HX:
        return 0.5 * th0
    if term is T.H:
        lo, hi = theta.support
        if hi <= 0.0:
            return 0.0
        x, w = composite_nodes([max(lo, 0.0), hi], 20, 32)
        return float(np.dot(w, theta(x)))
    if term is T.H_DELTAX_REFL:
        # d/dx [delta(-x)] pairs to -theta'(0)
        return -c * dth0
    raise ValueError(term)


@dataclass
class LemmaReport:
    term: LemmaTerm
    eps_ladder: list
    pairings: list
    limit: float
    deviations: list
    slope: float

    def to_dict(self):
        return {
            "term": self.term.value,
            "eps_ladder": self.eps_ladder,
            "pairings": self.pairings,
            "limit": self.limit,
            "deviations": self.deviations,
            "slope": None if math.isnan(self.slope) else self.slope,
        }

    def passes(self, rel=1e-2):
        """Deviation at the finest eps within ``rel`` of the limit's scale.

        A zero limit uses ``rel`` as an absolute bound; the disjoint-support
        products must vanish exactly at every eps.
        """
        if self.term in EXACT_ZERO_TERMS:
            return all(p == 0.0 for p in self.pairings)
        bound = rel * abs(self.limit) if self.limit != 0.0 else rel
        return self.deviations[-1] <= bound


def lemma_check(term, moll, theta, eps_ladder, c=0.5) -> LemmaReport:
    eps = check_ladder(eps_ladder, "eps_ladder")
    lim = lemma_limit(term, moll, theta, c)
    pair = [expansion_term(term, moll, theta, e, c) for e in eps]
    dev = [abs(p - lim) for p in pair]
    return LemmaReport(LemmaTerm(term), eps, pair, lim, dev, loglog_slope(eps, dev))


# -- ansatz ------------------------------------------------------------------

@dataclass(frozen=True)
class RegularizedAnsatz:
    data: SigmaBarDecomposition
    eps: float
    moll: Mollifier
    phi_dot: float
    e_dot: float
    c: float

    @property
    def params(self):
        d = self.data
        return (d.u0, d.u1, d.sigma0, d.sigma1, self.phi_dot, self.e_dot,
                self.moll.omega0, self.eps, self.c, self.moll.a, self.moll.norm)

    def phi(self, t):
        return self.phi_dot * np.asarray(t, dtype=float)

    def e(self, t):
        return self.e_dot * np.asarray(t, dtype=float)

    def p(self, t):
        return np.sqrt(2.0 * self.e(t) / self.moll.omega0)

    def closure_defect(self, t):
        """(1/2) p^2 omega0 - e, which the construction makes vanish."""
        return 0.5 * self.p(t) ** 2 * self.moll.omega0 - self.e(t)

    def values(self, x, t):
        return kernels.ansatz_values(x, t, self.params)

    def residual_density(self, x, t):
        return kernels.residual_density(x, t, self.params)


def build_ansatz(data: RiemannData, eps: float, moll: Mollifier | None = None) -> RegularizedAnsatz:
    if data.k != 0.0:
        raise NotApplicable("the regularized ansatz is for the limiting system (k = 0)")
    if not eps > 0:
        raise ValueError("eps must be positive")
    moll = moll or make_mollifier()
    h = to_heaviside_form(data)
    if data.is_constant:
        return RegularizedAnsatz(h, eps, moll, h.u0, 0.0, 0.5)
    if h.u1 == 0.0:
        raise ZeroVelocityJump("u_L == u_R with a stress jump has no delta-shock")
    phi_dot, e_dot = generalized_rh(data)
    if e_dot < 0.0:
        adm = admissibility(data)
        raise NonAdmissible(
            f"e_dot = {e_dot!r} < 0 makes p(t) imaginary; lax_ok={adm.lax_ok}, "
            f"overcompressive={adm.overcompressive} ({adm.details})"
        )
    return RegularizedAnsatz(h, eps, moll, phi_dot, e_dot, h.c)


# (lo, hi, panels) in units of eps relative to the front
_FRONT_PIECES = ((-4.0, -3.0, 1), (-3.0, -1.0, 2), (-1.0, 1.0, 2), (1.0, 3.0, 2), (3.0, 4.0, 1))


def _x_rule(front, eps, xa, xb, outer_panels=4):
    """Band-aligned x nodes/weights per time node; shape (n_t, n_x).

    Pieces are clipped to [xa, xb]; pieces falling outside get zero width
    and hence zero weight.
    """
    gx, gw = gauss_legendre(_NODES_PER_EPS)
    front = np.asarray(front, dtype=float)[:, None]
    segs = [(np.full_like(front, xa), np.clip(front - 4 * eps, xa, xb), outer_panels)]
    for lo, hi, n in _FRONT_PIECES:
        segs.append((np.clip(front + lo * eps, xa, xb), np.clip(front + hi * eps, xa, xb), n))
    segs.append((np.clip(front + 4 * eps, xa, xb), np.full_like(front, xb), outer_panels))
    xs, ws = [], []
    for a, b, n in segs:
        h = (b - a) / n
        for j in range(n):
            lo = a + j * h
            half = 0.5 * h
            xs.append(lo + half + half * gx)
            ws.append(half * gw * np.ones_like(lo))
    return np.concatenate(xs, axis=1), np.concatenate(ws, axis=1)


def _t_rule(ta, tb, singular_start, panels=24, order=12):
    if singular_start:
        edges = graded_edges(ta, tb, levels=20)
        edges = np.unique(np.concatenate([edges, np.linspace(ta, tb, panels + 1)]))
    else:
        edges = np.linspace(ta, tb, panels + 1)
    return composite_nodes(edges, order)


def weak_residual(ansatz: RegularizedAnsatz, theta: TestFunction, t_panels=24, max_nodes=20_000_000):
    """Absolute pairings of both equations' residuals with ``theta``.

    Derivatives of the ansatz are analytic; the x grid follows the front
    with ``_NODES_PER_EPS`` Gauss nodes per eps-wide cell of the transition band.
    """
    xa, xb, ta, tb = theta.box
    eps = ansatz.eps
    scale = max(abs(xa), abs(xb), abs(ansatz.phi_dot) * tb, 1.0)
    if eps < 1e-12 * scale:
        raise ResolutionError(f"eps = {eps!r} is below floating resolution at |x| ~ {scale}")
    singular = ta == 0.0 and ansatz.e_dot > 0.0
    t, wt = _t_rule(ta, tb, singular, t_panels)
    X, WX = _x_rule(ansatz.phi(t), eps, xa, xb)
    if X.size > max_nodes:
        raise ResolutionError(f"{X.size} quadrature nodes exceed the budget of {max_nodes}")
    T = np.broadcast_to(t[:, None], X.shape)
    d1, d2 = ansatz.residual_density(X, T)
    th = theta(X, T)
    W = WX * wt[:, None]
    r1 = float(np.sum(W * d1 * th))
    r2 = float(np.sum(W * d2 * th))
    if not (math.isfinite(r1) and math.isfinite(r2)):
        raise FloatingPointError("non-finite weak residual")
    return abs(r1), abs(r2)


def initial_defect(ansatz: RegularizedAnsatz, theta: TestFunction1D):
    """Pairings of u(., 0, eps) - u(., 0) and sigma(., 0, eps) - sigma(., 0)."""
    lo, hi = theta.support
    x, w = _band_rule(lo, hi, ansatz.eps)
    u_eps, s_eps = ansatz.values(x, np.zeros_like(x))
    d = ansatz.data
    left = x < 0
    u0 = np.where(left, d.u0 + d.u1, d.u0)
    s0 = np.where(left, d.sigma0 + d.sigma1, d.sigma0)
    th = theta(x)
    return float(np.dot(w, (u_eps - u0) * th)), float(np.dot(w, (s_eps - s0) * th))


def sweep_threads():
    try:
        return max(1, int(os.environ.get("NCRS_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ResidualReport:
    eps_ladder: list
    r1: list
    r2: list
    fitted_rates: tuple
    meta: dict = field(default_factory=dict)

    def monotone(self):
        return all(b < a for a, b in zip(self.r1, self.r1[1:])) and all(
            b < a for a, b in zip(self.r2, self.r2[1:])
        )

    def passes(self, rel_drop=1e-2, abs_tol=1e-10):
        """Both sequences at quadrature noise, or strictly decreasing to ``rel_drop`` of the start."""
        if max(self.r1 + self.r2) <= abs_tol:
            return True
        ok = []
        for r in (self.r1, self.r2):
            if max(r) <= abs_tol:
                ok.append(True)
                continue
            dec = all(b < a for a, b in zip(r, r[1:]))
            ok.append(dec and r[-1] <= rel_drop * r[0])
        return all(ok)

    def to_dict(self):
        s1, s2 = self.fitted_rates
        return {
            "format_version": 1,
            "eps_ladder": self.eps_ladder,
            "r1": self.r1,
            "r2": self.r2,
            "fitted_rates": [None if math.isnan(s1) else s1, None if math.isnan(s2) else s2],
            **self.meta,
        }

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["eps", "r1", "r2"])
            for row in zip(self.eps_ladder, self.r1, self.r2):
                w.writerow([repr(float(v)) for v in row])


def residual_sweep(data: RiemannData, theta: TestFunction, eps_ladder, moll: Mollifier | None = None,
                   threads: int | None = None) -> ResidualReport:
    eps = check_ladder(eps_ladder, "eps_ladder")
    moll = moll or make_mollifier()
    ansatze = [build_ansatz(data, e, moll) for e in eps]
    n = threads or sweep_threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            res = list(ex.map(lambda a: weak_residual(a, theta), ansatze))
    else:
        res = [weak_residual(a, theta) for a in ansatze]
    r1 = [r[0] for r in res]
    r2 = [r[1] for r in res]
    if data.is_constant:
        rates = (math.nan, math.nan)
        note = "constant data: residuals are quadrature noise, slope undefined"
    else:
        rates = (loglog_slope(eps, r1), loglog_slope(eps, r2))
        note = ""
    meta = {"mollifier": moll.kind.value, "omega0": moll.omega0}
    if note:
        meta["note"] = note
    return ResidualReport(eps, r1, r2, rates, meta)
