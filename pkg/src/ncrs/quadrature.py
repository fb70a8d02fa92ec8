"""Composite Gauss-Legendre rules split at declared breakpoints."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss order per panel and number of equal panels per smooth piece."""

    order: int = 8
    panels: int = 1

    def __post_init__(self):
        if self.order < 1 or self.panels < 1:
            raise ValueError("order and panels must be positive")

    def refined(self, factor=2):
        return QuadratureSpec(self.order, self.panels * factor)


@lru_cache(maxsize=64)
def gauss_legendre(n):
    """Nodes and weights on [-1, 1]; read-only arrays."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def piece_edges(a, b, breakpoints=()):
    """Sorted edges of [a, b] with every interior breakpoint inserted."""
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    return np.array([a, *inner, b], dtype=float)


def composite_nodes(edges, order, panels=1):
    """Nodes and weights of the composite rule over consecutive ``edges``.

    Each interval between edges is cut into ``panels`` equal panels with an
    ``order``-point Gauss rule on each.
    """
    gx, gw = gauss_legendre(order)
    edges = np.asarray(edges, dtype=float)
    if panels > 1:
        fine = [np.linspace(a, b, panels + 1)[:-1] for a, b in zip(edges[:-1], edges[1:])]
        edges = np.append(np.concatenate(fine), edges[-1])
    a = edges[:-1, None]
    b = edges[1:, None]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b) + half * gx).ravel()
    weights = (half * gw).ravel()
    return nodes, weights


def integrate(f, a, b, breakpoints=(), spec=QuadratureSpec()):
    """Integrate a vectorized ``f`` over [a, b], splitting at ``breakpoints``."""
    nodes, weights = composite_nodes(piece_edges(a, b, breakpoints), spec.order, spec.panels)
    vals = np.asarray(f(nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite integrand value at a quadrature node")
    return float(np.dot(weights, vals))


def graded_edges(a, b, levels=12, ratio=0.5):
    """Edges on [a, b] refined geometrically towards ``a``.

    Used for integrands with an integrable endpoint singularity at ``a``.
    """
    h = b - a
    pts = [a + h * ratio**j for j in range(levels, 0, -1)]
    return np.array([a, *pts, b])
