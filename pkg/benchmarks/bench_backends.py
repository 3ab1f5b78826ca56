"""Benchmark the compiled kernels against the pure numpy fallback.

Times the individual hot kernels on archive-sized inputs and a full
steady-state run under each backend, and verifies both produce the same
final front.

Usage: python benchmarks/bench_backends.py
"""

from __future__ import annotations

import time

import numpy as np

from conemoea import _kernels
from conemoea._kernels import get_backend
from conemoea.algorithms import run
from conemoea.bench import default_config
from conemoea.problems import make_problem

KERNEL_NAMES = (
    "dominates", "eps_dominates", "cone_dominates", "scan_pareto", "scan_eps",
    "scan_cone", "scan_archive", "nondominated_rank", "spea2_raw",
)


def time_call(fn, args, repeat):
    best = np.inf
    for _ in range(5):
        start = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / repeat)
    return best


def bench_kernels(backends):
    rng = np.random.default_rng(0)
    m = 3
    F = rng.uniform(0, 1, size=(120, m))
    C = np.floor(F / 0.1) * 0.1
    y = rng.uniform(0, 1, m)
    cy = np.floor(y / 0.1) * 0.1
    eps = np.full(m, 0.1)
    psi = np.full((m, m), 0.05)
    np.fill_diagonal(psi, 0.1)
    inv = np.ascontiguousarray(np.linalg.inv(psi))
    pop = rng.uniform(0, 1, size=(200, m))

    cases = {
        "dominates": ((F[0], F[1]), 20000),
        "eps_dominates": ((F[0], F[1], eps), 20000),
        "cone_dominates": ((F[0], F[1], eps, inv, 1e-9), 20000),
        "scan_pareto": ((F, y), 5000),
        "scan_eps": ((F, y, eps), 5000),
        "scan_cone": ((F, y, eps, inv, 1e-9), 5000),
        "scan_archive": ((F, C, y, cy, inv, 1e-9), 5000),
        "nondominated_rank": ((pop,), 200),
        "spea2_raw": ((pop,), 200),
    }
    print(f"{'kernel':<20}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, (args, repeat) in cases.items():
        times = {}
        for label, backend in backends.items():
            times[label] = time_call(getattr(backend, name), args, repeat)
        ratio = times["pure"] / times["compiled"]
        print(f"{name:<20}{times['pure'] * 1e6:>10.2f}us{times['compiled'] * 1e6:>10.2f}us{ratio:>9.1f}x")


def bench_run(backends):
    problem = make_problem("zdt1")
    cfg = default_config("zdt1", "CONEEPSMOEA", seed=0, budget=5000)
    fronts = {}
    print(f"\n{'steady-state run':<20}{'time':>12}")
    for label, backend in backends.items():
        for name in KERNEL_NAMES:
            setattr(_kernels, name, getattr(backend, name))
        start = time.perf_counter()
        result = run(problem, cfg)
        elapsed = time.perf_counter() - start
        fronts[label] = [tuple(s.f) for s in result.final_front]
        print(f"{label:<20}{elapsed:>11.2f}s  (|front| = {len(result.final_front)})")
    assert fronts["pure"] == fronts["compiled"], "backends disagree"
    print("final fronts identical across backends")


def main():
    backends = {"pure": get_backend("pure"), "compiled": get_backend("c")}
    bench_kernels(backends)
    bench_run(backends)


if __name__ == "__main__":
    main()
