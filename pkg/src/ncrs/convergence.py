"""Log-log rate fitting for ladders of a small parameter."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def loglog_slope(h, err):
    """Least-squares slope of log(err) against log(h).

    Returns nan when fewer than two strictly positive errors are available.
    """
    h = np.asarray(h, dtype=float)
    err = np.asarray(err, dtype=float)
    m = (h > 0) & (err > 0) & np.isfinite(err)
    if m.sum() < 2:
        return math.nan
    q = np.polyfit(np.log(h[m]), np.log(err[m]), 1)
    return float(q[0])


def check_ladder(ladder, name="ladder"):
    """Validate a strictly decreasing, positive, finite ladder."""
    vals = [float(v) for v in ladder]
    if len(vals) < 2:
        raise ValueError(f"{name} needs at least two entries")
    if any(not math.isfinite(v) or v <= 0.0 for v in vals):
        raise ValueError(f"{name} entries must be finite and > 0")
    if any(b >= a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"{name} must decrease")
    return vals


@dataclass
class ConvergenceReport:
    ladder: list
    errors: list
    slope: float
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "ladder": list(self.ladder),
            "errors": list(self.errors),
            "slope": self.slope,
            **self.extra,
        }
