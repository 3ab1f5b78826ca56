"""Parity between the compiled and pure kernel backends."""

import os
import subprocess
import sys

import numpy as np
import pytest

from conemoea._kernels import BACKEND, get_backend

pure = get_backend("pure")
try:
    compiled = get_backend("c")
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def random_case(rng, n, m):
    F = rng.uniform(0, 1, size=(n, m))
    y = rng.uniform(0, 1, m)
    eps = rng.uniform(0.01, 0.2, m)
    kappa = float(rng.uniform(0, 0.95))
    psi = np.full((m, m), kappa)
    np.fill_diagonal(psi, 1.0)
    psi *= eps[:, None]
    inv = np.ascontiguousarray(np.linalg.inv(psi))
    return F, y, eps, inv


@needs_compiled
def test_scalar_kernels_agree():
    rng = np.random.default_rng(1)
    for _ in range(3000):
        m = int(rng.integers(2, 4))
        F, y, eps, inv = random_case(rng, 2, m)
        a, b = F[0], F[1]
        assert pure.dominates(a, b) == compiled.dominates(a, b)
        assert pure.eps_dominates(a, b, eps) == compiled.eps_dominates(a, b, eps)
        assert pure.cone_dominates(a, b, eps, inv, 1e-9) == \
            compiled.cone_dominates(a, b, eps, inv, 1e-9)


@needs_compiled
def test_scan_kernels_agree():
    rng = np.random.default_rng(2)
    for _ in range(300):
        m = int(rng.integers(2, 4))
        n = int(rng.integers(1, 60))
        F, y, eps, inv = random_case(rng, n, m)
        for name, args in (
            ("scan_pareto", (F, y)),
            ("scan_eps", (F, y, eps)),
            ("scan_cone", (F, y, eps, inv, 1e-9)),
        ):
            dom_p, mask_p = getattr(pure, name)(*args)
            dom_c, mask_c = getattr(compiled, name)(*args)
            assert dom_p == dom_c, name
            assert np.array_equal(mask_p, mask_c), name
        C = np.floor(F / eps) * eps
        cy = np.floor(y / eps) * eps
        dom_p, mask_p = pure.scan_archive(F, C, y, cy, inv, 1e-9)
        dom_c, mask_c = compiled.scan_archive(F, C, y, cy, inv, 1e-9)
        assert dom_p == dom_c
        assert np.array_equal(mask_p, mask_c)


@needs_compiled
def test_rank_and_strength_agree():
    rng = np.random.default_rng(3)
    for _ in range(100):
        m = int(rng.integers(2, 4))
        n = int(rng.integers(2, 120))
        F = rng.uniform(0, 1, size=(n, m))
        # duplicates exercise the equal-vector path
        F[rng.integers(n)] = F[rng.integers(n)]
        assert np.array_equal(pure.nondominated_rank(F), compiled.nondominated_rank(F))
        assert np.array_equal(pure.spea2_raw(F), compiled.spea2_raw(F))


@needs_compiled
def test_runs_identical_across_backends(monkeypatch):
    from conemoea import _kernels, algorithms
    from conemoea.bench import default_config
    from conemoea.problems import make_problem

    problem = make_problem("deb52")
    cfg = default_config("deb52", "CONEEPSMOEA", seed=4, budget=2000, pop_size=20)

    fronts = {}
    for backend in (compiled, pure):
        for name in ("dominates", "eps_dominates", "cone_dominates", "scan_pareto",
                     "scan_eps", "scan_cone", "scan_archive", "nondominated_rank",
                     "spea2_raw"):
            monkeypatch.setattr(_kernels, name, getattr(backend, name))
        result = algorithms.run(problem, cfg)
        fronts[id(backend)] = [tuple(s.f) for s in result.final_front]
    a, b = fronts.values()
    assert a == b


def test_pure_backend_forced_by_env():
    code = (
        "import conemoea; import sys; "
        "sys.exit(0 if conemoea.KERNEL_BACKEND == 'pure' else 1)"
    )
    env = dict(os.environ, CONEMOEA_KERNELS="pure")
    proc = subprocess.run([sys.executable, "-c", code], env=env)
    assert proc.returncode == 0


def test_backend_name_is_valid():
    assert BACKEND in ("c", "pure")
