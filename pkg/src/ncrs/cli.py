"""Command-line front end.

    ncrs <task> --config file.json [--out dir] [--tol x] [--quiet]

Exit status: 0 when the task's checks pass, 1 on a verification failure,
2 on bad input. Every JSON file carries ``format_version``; CSV files are
for plotting and have fixed columns:

    shock-curves       curves.csv     u, sigma, family, k, path_kind
    delta-shock        profile.csv    x, t, u, sigma_bar
    weak-sweep         sweep_<i>.csv  eps, r1, r2
    lemma-check        lemma.csv      term, theta, eps, pairing, limit, deviation
    k-limit            k_limit.csv    path_kind, k, s2_error, s1_jump
"""
from __future__ import annotations

import argparse
import csv
import enum
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import NcrsError, RiemannData, State, to_heaviside_form
from .delta_shock import (
    DeltaShockSolution,
    admissibility,
    build_delta_shock,
    classify_riemann,
    write_profile,
)
from .dlm_paths import PathKind, builtin_path
from .identity_verify import analytic_balance, verification_report, write_report
from .quadrature import QuadratureSpec
from .rh_shock import (
    k_limit_report,
    rarefaction_possible,
    rh_residual,
    sample_shock_curves,
    shock_speed,
    volpert_shock_exists,
    write_curves_csv,
)
from .testfunctions import TestFunction, TestFunction1D
from .weak_asymptotics import LemmaTerm, lemma_check, make_mollifier, residual_sweep

FORMAT_VERSION = 1


class Task(enum.Enum):
    CLASSIFY = "classify"
    SHOCK_CURVES = "shock-curves"
    DELTA_SHOCK = "delta-shock"
    VERIFY_IDENTITIES = "verify-identities"
    WEAK_SWEEP = "weak-sweep"
    LEMMA_CHECK = "lemma-check"
    K_LIMIT = "k-limit"


DEFAULT_TOL = 1e-10
DEFAULT_EPS_LADDER = tuple(2.0 ** -j for j in range(3, 10))
DEFAULT_K_LADDER = (1e-1, 1e-2, 1e-3, 1e-4)
DEFAULT_K_VALUES = (0.0, 0.5, 1.0)
DEFAULT_LEMMA_THETAS = (
    {"center": 0.0, "width": 1.0},
    {"center": 0.2, "width": 1.0, "coeffs": [0.5]},
    {"center": -0.1, "width": 1.2, "coeffs": [0.3, -0.2]},
    {"center": 0.3, "width": 1.5},
    {"center": 0.1, "width": 1.5, "coeffs": [1.0, 0.5, 0.25]},
)


class ConfigError(ValueError):
    """Field-level problems found while parsing a configuration."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.errors))


@dataclass
class ProblemConfig:
    data: RiemannData
    task: Task | None = None
    tol: float = DEFAULT_TOL
    eps_ladder: tuple = DEFAULT_EPS_LADDER
    k_ladder: tuple = DEFAULT_K_LADDER
    k_values: tuple = DEFAULT_K_VALUES
    path_kinds: tuple = (PathKind.PHI_EXAMPLE, PathKind.PHI_TILDE_EXAMPLE)
    u_grid: tuple | None = None
    u_probe: float | None = None
    thetas: tuple | None = None
    lemma_thetas: tuple | None = None
    lemma_c: float | None = None
    x_grid: tuple = (-2.0, 3.0, 101)
    t_values: tuple = (0.5, 1.0, 2.0)
    front_speed_offset: float = 0.0
    mollifier: str = "bump"
    rel_drop: float = 1e-2
    threads: int | None = None
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    out: str | None = None

    def to_dict(self):
        d = self.data
        return {
            "uL": d.left.u, "sigmaL": d.left.sigma, "uR": d.right.u, "sigmaR": d.right.sigma, "k": d.k,
            "task": None if self.task is None else self.task.value,
            "tol": self.tol,
            "eps_ladder": list(self.eps_ladder),
            "k_ladder": list(self.k_ladder),
            "k_values": list(self.k_values),
            "path_kinds": [p.value for p in self.path_kinds],
            "u_grid": None if self.u_grid is None else dict(zip(("start", "stop", "num"), self.u_grid)),
            "u_probe": self.u_probe,
            "thetas": None if self.thetas is None else [t.to_config() for t in self.thetas],
            "lemma_thetas": None if self.lemma_thetas is None else [_theta1d_config(t) for t in self.lemma_thetas],
            "lemma_c": self.lemma_c,
            "grid": {"x": dict(zip(("start", "stop", "num"), self.x_grid)), "t": list(self.t_values)},
            "front_speed_offset": self.front_speed_offset,
            "mollifier": self.mollifier,
            "rel_drop": self.rel_drop,
            "threads": self.threads,
            "quadrature": {"order": self.quadrature.order, "panels": self.quadrature.panels},
        }


def _theta1d_config(th):
    return {"center": th.center, "width": th.width, "coeffs": list(th.coeffs), "amplitude": th.amplitude}


# -- parsing -----------------------------------------------------------------

_KNOWN = {
    "uL", "sigmaL", "uR", "sigmaR", "k", "task", "tol", "eps_ladder", "k_ladder", "k_values",
    "path_kinds", "u_grid", "u_probe", "thetas", "lemma_thetas", "lemma_c", "grid",
    "front_speed_offset", "mollifier", "rel_drop", "threads", "quadrature", "out",
}


class _Collector:
    def __init__(self):
        self.errors = []

    def add(self, path, msg):
        self.errors.append((path, msg))

    def number(self, obj, key, path=None, default=None, required=False):
        path = path or key
        if key not in obj or obj[key] is None:
            if required:
                self.add(path, "required")
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.add(path, "must be a number")
            return default
        if not math.isfinite(v):
            self.add(path, "must be finite")
            return default
        return float(v)

    def ladder(self, obj, key, default):
        if key not in obj:
            return default
        v = obj[key]
        if not isinstance(v, list) or len(v) < 2:
            self.add(key, "must be a list of at least two numbers")
            return default
        vals = []
        for i, x in enumerate(v):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x) or x <= 0:
                self.add(f"{key}[{i}]", "must be a finite number > 0")
                return default
            vals.append(float(x))
        if any(b >= a for a, b in zip(vals, vals[1:])):
            self.add(key, "ladder must decrease")
            return default
        return tuple(vals)

    def grid(self, obj, path):
        if not isinstance(obj, dict):
            self.add(path, "must be an object with start, stop, num")
            return None
        start = self.number(obj, "start", f"{path}.start", required=True)
        stop = self.number(obj, "stop", f"{path}.stop", required=True)
        num = obj.get("num")
        if isinstance(num, bool) or not isinstance(num, int) or num < 1:
            self.add(f"{path}.num", "must be a positive integer")
            return None
        if start is None or stop is None:
            return None
        return (start, stop, num)


def parse_config(source: str) -> ProblemConfig:
    """Validate JSON text; raise :class:`ConfigError` listing every problem."""
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError([("$", f"invalid JSON: {exc.msg} at line {exc.lineno}")]) from None
    if not isinstance(raw, dict):
        raise ConfigError([("$", "top level must be an object")])
    c = _Collector()
    for key in sorted(set(raw) - _KNOWN):
        c.add(key, "unknown field")

    uL = c.number(raw, "uL", required=True)
    sL = c.number(raw, "sigmaL", required=True)
    uR = c.number(raw, "uR", required=True)
    sR = c.number(raw, "sigmaR", required=True)
    k = c.number(raw, "k", default=0.0)
    if k is not None and k < 0:
        c.add("k", "k must be ≥ 0")

    task = None
    if raw.get("task") is not None:
        try:
            task = Task(raw["task"])
        except ValueError:
            c.add("task", f"must be one of {[t.value for t in Task]}")

    tol = c.number(raw, "tol", default=DEFAULT_TOL)
    if tol is not None and tol <= 0:
        c.add("tol", "must be > 0")
    rel_drop = c.number(raw, "rel_drop", default=1e-2)
    if rel_drop is not None and not 0 < rel_drop < 1:
        c.add("rel_drop", "must lie in (0, 1)")
    eps_ladder = c.ladder(raw, "eps_ladder", DEFAULT_EPS_LADDER)
    k_ladder = c.ladder(raw, "k_ladder", DEFAULT_K_LADDER)

    k_values = DEFAULT_K_VALUES
    if "k_values" in raw:
        v = raw["k_values"]
        if not isinstance(v, list) or not v or any(
            isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x) or x < 0 for x in v
        ):
            c.add("k_values", "must be a non-empty list of finite numbers ≥ 0")
        else:
            k_values = tuple(float(x) for x in v)

    path_kinds = (PathKind.PHI_EXAMPLE, PathKind.PHI_TILDE_EXAMPLE)
    if "path_kinds" in raw:
        v = raw["path_kinds"]
        ok = isinstance(v, list) and v and all(x in ("phi", "phi-tilde") for x in v)
        if not ok:
            c.add("path_kinds", 'must be a non-empty list drawn from "phi", "phi-tilde"')
        else:
            path_kinds = tuple(PathKind(x) for x in v)

    u_grid = None
    if raw.get("u_grid") is not None:
        u_grid = c.grid(raw["u_grid"], "u_grid")
        if u_grid and uL is not None and max(u_grid[0], u_grid[1]) >= uL:
            c.add("u_grid", "shock curves need u < uL")
    u_probe = c.number(raw, "u_probe")
    if u_probe is not None and uL is not None and u_probe >= uL:
        c.add("u_probe", "must be < uL")

    thetas = None
    if raw.get("thetas") is not None:
        v = raw["thetas"]
        if not isinstance(v, list) or not v:
            c.add("thetas", "must be a non-empty list")
        else:
            thetas = []
            for i, item in enumerate(v):
                try:
                    thetas.append(TestFunction.from_config(item))
                except (KeyError, TypeError, ValueError) as exc:
                    c.add(f"thetas[{i}]", f"bad test function: {exc}")
            thetas = tuple(thetas)

    lemma_thetas = None
    if raw.get("lemma_thetas") is not None:
        v = raw["lemma_thetas"]
        if not isinstance(v, list) or not v:
            c.add("lemma_thetas", "must be a non-empty list")
        else:
            lemma_thetas = []
            for i, item in enumerate(v):
                try:
                    lemma_thetas.append(_theta1d(item))
                except (KeyError, TypeError, ValueError) as exc:
                    c.add(f"lemma_thetas[{i}]", f"bad test function: {exc}")
            lemma_thetas = tuple(lemma_thetas)
    lemma_c = c.number(raw, "lemma_c")

    x_grid, t_values = (-2.0, 3.0, 101), (0.5, 1.0, 2.0)
    if raw.get("grid") is not None:
        g = raw["grid"]
        if not isinstance(g, dict):
            c.add("grid", "must be an object")
        else:
            if "x" in g:
                x_grid = c.grid(g["x"], "grid.x") or x_grid
            if "t" in g:
                tv = g["t"]
                if not isinstance(tv, list) or not tv or any(
                    isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x) or x < 0 for x in tv
                ):
                    c.add("grid.t", "must be a non-empty list of finite times ≥ 0")
                else:
                    t_values = tuple(float(x) for x in tv)

    offset = c.number(raw, "front_speed_offset", default=0.0)
    moll = raw.get("mollifier", "bump")
    if moll not in ("bump", "sharp-bump"):
        c.add("mollifier", 'must be "bump" or "sharp-bump"')
    threads = raw.get("threads")
    if threads is not None and (isinstance(threads, bool) or not isinstance(threads, int) or threads < 1):
        c.add("threads", "must be a positive integer")

    quad = QuadratureSpec()
    if raw.get("quadrature") is not None:
        q = raw["quadrature"]
        try:
            quad = QuadratureSpec(int(q.get("order", 8)), int(q.get("panels", 1)))
        except (AttributeError, TypeError, ValueError) as exc:
            c.add("quadrature", f"bad quadrature spec: {exc}")
    out = raw.get("out")
    if out is not None and not isinstance(out, str):
        c.add("out", "must be a string")

    if c.errors:
        raise ConfigError(c.errors)
    return ProblemConfig(
        data=RiemannData(State(uL, sL), State(uR, sR), k),
        task=task, tol=tol, eps_ladder=eps_ladder, k_ladder=k_ladder, k_values=k_values,
        path_kinds=path_kinds, u_grid=u_grid, u_probe=u_probe, thetas=thetas,
        lemma_thetas=lemma_thetas, lemma_c=lemma_c, x_grid=x_grid, t_values=t_values,
        front_speed_offset=offset, mollifier=moll, rel_drop=rel_drop, threads=threads,
        quadrature=quad, out=out,
    )


def _theta1d(cfg):
    return TestFunction1D(float(cfg["center"]), float(cfg["width"]),
                          tuple(cfg.get("coeffs", ())), float(cfg.get("amplitude", 1.0)))


# -- report ------------------------------------------------------------------

@dataclass
class RunReport:
    config: dict
    task: str
    outputs: dict
    passed: bool
    version: str = __version__
    wall_time: float = 0.0
    files: list = field(default_factory=list)

    def to_dict(self, with_time=True):
        d = {
            "format_version": FORMAT_VERSION,
            "config": self.config,
            "task": self.task,
            "outputs": self.outputs,
            "passed": self.passed,
            "version": self.version,
            "files": list(self.files),
        }
        if with_time:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, with_time=True):
        return _dumps(self.to_dict(with_time))

    @classmethod
    def from_dict(cls, d):
        return cls(d["config"], d["task"], d["outputs"], d["passed"], d["version"],
                   d.get("wall_time", 0.0), list(d.get("files", [])))


def _clean(obj):
    """JSON-safe copy: nan/inf become None, tuples become lists."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _dumps(obj):
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


# -- tasks -------------------------------------------------------------------
# Each task returns (outputs, passed, writers); writers run after all work is done.

def default_thetas(s):
    """Three test functions whose boxes straddle the front x = s t."""
    return (
        TestFunction(s * 1.0, 1.0, 0.6, 0.5),
        TestFunction(s * 0.8 + 0.1, 0.8, 0.8, 0.6, (0.5,)),
        TestFunction(s * 1.2 - 0.1, 1.2, 0.7, 0.9, (0.3, -0.2)),
    )


def _task_classify(cfg):
    d = cfg.data
    out = {"volpert": volpert_shock_exists(d).to_dict()}
    if d.left.u != d.right.u:
        out["shock_speed"] = shock_speed(d)
    if d.k == 0.0:
        out["riemann"] = classify_riemann(d).to_dict()
        out["rarefaction"] = rarefaction_possible(d).to_dict()
    return out, True, []


def _task_shock_curves(cfg):
    left = cfg.data.left
    u0, u1, n = cfg.u_grid or (left.u - 4.0, left.u - 0.05, 80)
    us = np.linspace(u0, u1, n)
    rows = sample_shock_curves(left, cfg.k_values, cfg.path_kinds, us)
    worst = 0.0
    for u, sigma, _fam, k, pk in rows:
        data = RiemannData(left, State(u, sigma), k)
        res = rh_residual(builtin_path(pk), data, shock_speed(data), cfg.quadrature)
        worst = max(worst, res.max_abs())
    out = {"rows": len(rows), "max_rh_residual": worst, "tol": cfg.tol}
    return out, worst <= cfg.tol, [("curves.csv", lambda p: write_curves_csv(p, rows))]


def _task_delta_shock(cfg):
    sol = build_delta_shock(cfg.data)
    xs = np.linspace(*cfg.x_grid)
    ts = np.asarray(cfg.t_values)
    out = {
        "s": sol.s,
        "e_dot": sol.e_dot,
        "heaviside": _heaviside(cfg.data),
        "admissibility": admissibility(cfg.data).to_dict(),
    }
    return out, True, [("profile.csv", lambda p: write_profile(p, _sibling(p, "front.json"), sol, xs, ts))]


def _sibling(path, name):
    return os.path.join(os.path.dirname(path), name)


def _heaviside(data):
    h = to_heaviside_form(data)
    return {"u0": h.u0, "u1": h.u1, "sigma0": h.sigma0, "sigma1": h.sigma1}


def _task_verify(cfg):
    sol = build_delta_shock(cfg.data)
    if cfg.front_speed_offset:
        sol = DeltaShockSolution(cfg.data, sol.s + cfg.front_speed_offset, sol.e_dot)
    thetas = cfg.thetas or default_thetas(sol.s)
    rep = verification_report(sol, thetas, cfg.tol)
    balance = analytic_balance(cfg.data)
    rep["analytic_balance"] = balance
    rep["front_speed_offset"] = cfg.front_speed_offset
    out = {
        "passed": rep["passed"],
        "max_id1": max(r["id1"] for r in rep["residuals"]),
        "max_id2": max(r["id2"] for r in rep["residuals"]),
        "analytic_balance": balance,
    }
    return out, rep["passed"], [("identities.json", lambda p: write_report(p, _clean(rep)))]


def _task_weak_sweep(cfg):
    moll = make_mollifier(cfg.mollifier)
    s = cfg.data.left.u if cfg.data.is_constant else build_delta_shock(cfg.data).s
    thetas = cfg.thetas or default_thetas(s)
    reports = [residual_sweep(cfg.data, th, cfg.eps_ladder, moll, cfg.threads) for th in thetas]
    rows = []
    for th, r in zip(thetas, reports):
        d = r.to_dict()
        d["theta"] = th.to_config()
        d["passed"] = r.passes(cfg.rel_drop)
        rows.append(d)
    passed = all(r["passed"] for r in rows)
    doc = {"format_version": FORMAT_VERSION, "rel_drop": cfg.rel_drop, "passed": passed, "sweeps": rows}
    writers = [("weak_sweep.json", lambda p: _write_text(p, _dumps(doc)))]
    for i, r in enumerate(reports):
        writers.append((f"sweep_{i}.csv", r.to_csv))
    out = {"passed": passed, "final_ratios": [[r.r1[-1] / r.r1[0] if r.r1[0] else None,
                                               r.r2[-1] / r.r2[0] if r.r2[0] else None] for r in reports]}
    return out, passed, writers


def _task_lemma(cfg):
    moll = make_mollifier(cfg.mollifier)
    thetas = cfg.lemma_thetas or tuple(_theta1d(t) for t in DEFAULT_LEMMA_THETAS)
    c = cfg.lemma_c
    if c is None:
        h = to_heaviside_form(cfg.data)
        c = h.c if h.u1 != 0.0 else 0.5
    reports, failures = [], []
    for term in LemmaTerm:
        for i, th in enumerate(thetas):
            r = lemma_check(term, moll, th, cfg.eps_ladder, c)
            ok = r.passes()
            d = r.to_dict()
            d.update(theta=i, passed=ok)
            reports.append(d)
            if not ok:
                failures.append({"term": term.value, "theta": i, "deviation": r.deviations[-1], "limit": r.limit})
    passed = not failures
    doc = {
        "format_version": FORMAT_VERSION,
        "c": c,
        "mollifier": moll.kind.value,
        "omega0": moll.omega0,
        "thetas": [_theta1d_config(t) for t in thetas],
        "passed": passed,
        "terms": reports,
    }

    def write_csv(p):
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["term", "theta", "eps", "pairing", "limit", "deviation"])
            for d in reports:
                for e, pv, dv in zip(d["eps_ladder"], d["pairings"], d["deviations"]):
                    w.writerow([d["term"], d["theta"], repr(e), repr(pv), repr(d["limit"]), repr(dv)])

    writers = [("lemma.json", lambda p: _write_text(p, _dumps(doc))), ("lemma.csv", write_csv)]
    return {"passed": passed, "c": c, "failures": failures}, passed, writers


def _task_k_limit(cfg):
    left = cfg.data.left
    u = cfg.u_probe if cfg.u_probe is not None else left.u - 1.0
    reports = [k_limit_report(left, u, pk, cfg.k_ladder) for pk in cfg.path_kinds]
    rows = [r.to_dict() for r in reports]
    passed = all(abs(r.slope - 2.0) <= 0.05 and abs(r.extra["s1_slope"] - 2.0) <= 0.05 for r in reports)
    doc = {"format_version": FORMAT_VERSION, "u": u, "passed": passed, "reports": rows}

    def write_csv(p):
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["path_kind", "k", "s2_error", "s1_jump"])
            for r in reports:
                for k, e2, e1 in zip(r.ladder, r.errors, r.extra["s1_jumps"]):
                    w.writerow([r.extra["path_kind"], repr(k), repr(e2), repr(e1)])

    out = {"passed": passed, "slopes": {r.extra["path_kind"]: [r.slope, r.extra["s1_slope"]] for r in reports}}
    return out, passed, [("k_limit.json", lambda p: _write_text(p, _dumps(doc))), ("k_limit.csv", write_csv)]


_TASKS = {
    Task.CLASSIFY: _task_classify,
    Task.SHOCK_CURVES: _task_shock_curves,
    Task.DELTA_SHOCK: _task_delta_shock,
    Task.VERIFY_IDENTITIES: _task_verify,
    Task.WEAK_SWEEP: _task_weak_sweep,
    Task.LEMMA_CHECK: _task_lemma,
    Task.K_LIMIT: _task_k_limit,
}


def run(config: ProblemConfig, out_dir=None) -> RunReport:
    """Execute ``config.task`` and write its files plus ``report.json``.

    ``report.json`` omits the wall time so reruns are byte-identical.
    """
    if config.task is None:
        raise ConfigError([("task", "required")])
    out_dir = out_dir or config.out or "."
    t0 = time.perf_counter()
    outputs, passed, writers = _TASKS[config.task](config)
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for name, write in writers:
        write(os.path.join(out_dir, name))
        files.append(name)
    files.append("report.json")
    report = RunReport(config.to_dict(), config.task.value, _clean(outputs), bool(passed), files=files)
    _write_text(os.path.join(out_dir, "report.json"), report.to_json(with_time=False))
    report.wall_time = time.perf_counter() - t0
    return report


# -- entry point -------------------------------------------------------------

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser():
    ap = argparse.ArgumentParser(prog="ncrs", description="Riemann problems for a nonconservative stress system.")
    ap.add_argument("task", choices=[t.value for t in Task])
    ap.add_argument("--config", required=True, help="JSON problem configuration")
    ap.add_argument("--out", default=None, help="output directory (default: config 'out' or .)")
    ap.add_argument("--tol", type=float, default=None, help="override the verification tolerance")
    ap.add_argument("--quiet", action="store_true")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    err = sys.stderr
    try:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    except OSError as exc:
        print(f"ncrs: cannot read config: {exc}", file=err)
        return EXIT_INPUT
    except ConfigError as exc:
        for path, msg in exc.errors:
            print(f"ncrs: config error at {path}: {msg}", file=err)
        return EXIT_INPUT
    if cfg.task is not None and cfg.task.value != args.task:
        print(f"ncrs: config task {cfg.task.value!r} differs from command {args.task!r}", file=err)
        return EXIT_INPUT
    cfg.task = Task(args.task)
    if args.tol is not None:
        if not (math.isfinite(args.tol) and args.tol > 0):
            print("ncrs: --tol must be a finite number > 0", file=err)
            return EXIT_INPUT
        cfg.tol = args.tol
    try:
        report = run(cfg, args.out)
    except (NcrsError, ValueError, ZeroDivisionError) as exc:
        print(f"ncrs: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    if not args.quiet:
        status = "PASS" if report.passed else "FAIL"
        print(f"{report.task}: {status} ({report.wall_time:.3f} s)")
        print(json.dumps(report.outputs, indent=2, sort_keys=True))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
