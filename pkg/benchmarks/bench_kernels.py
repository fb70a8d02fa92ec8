"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]

Times ``residual_density`` on a band of points around the front and a full
weak-residual sweep, once per available backend, and reports the largest
difference between backends.
"""
import argparse
import time

import numpy as np

from ncrs import kernels
from ncrs.core import RiemannData
from ncrs.weak_asymptotics import build_ansatz, make_mollifier, weak_residual
from ncrs.testfunctions import TestFunction


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    data = RiemannData.from_values(2.0, 1.0, 0.0, 0.0)
    ansatz = build_ansatz(data, 2.0 ** -7, make_mollifier())
    rng = np.random.default_rng(0)
    t = rng.uniform(0.05, 2.0, args.points)
    x = ansatz.phi(t) + rng.uniform(-5, 5, args.points) * ansatz.eps
    params = ansatz.params

    mods = kernels.backends()
    if len(mods) < 2:
        print("compiled backend not built; only", list(mods), "available")
    results = {}
    for name, mod in mods.items():
        dt = best_of(lambda: mod.residual_density(x, t, params), args.repeat)
        results[name] = mod.residual_density(x, t, params)
        print(f"{name:8s} residual_density  {args.points} pts  {dt * 1e3:8.2f} ms")

    if len(results) == 2:
        a, b = results.values()
        diff = max(float(np.max(np.abs(p - q))) for p, q in zip(a, b))
        scale = max(float(np.max(np.abs(p))) for p in a)
        print(f"max |difference| = {diff:.3e} (field scale {scale:.3e})")
        tp = best_of(lambda: mods["python"].residual_density(x, t, params), args.repeat)
        tc = best_of(lambda: mods["cython"].residual_density(x, t, params), args.repeat)
        print(f"cython speedup over python: {tp / tc:.2f}x")

    theta = TestFunction(0.5, 1.0, 0.6, 0.5)
    dt = best_of(lambda: weak_residual(ansatz, theta), args.repeat)
    print(f"weak_residual (active backend {kernels.BACKEND}): {dt * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
