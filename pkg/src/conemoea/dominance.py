"""Dominance relations, the cone matrix, box indexing and epsilon sizing.

Three relations are provided, all under the minimization convention:

- ``pareto_dominates``: componentwise <= with at least one strict <.
- ``eps_dominates``: the additive scheme, a_i - eps_i <= b_i for all i.
- ``cone_eps_dominates``: a dominates b when it Pareto-dominates b, or
  when b lies inside the hypercone anchored at a - eps whose edges are
  the columns of the cone matrix. The cone opening is controlled by
  kappa in [0, 1): kappa -> 0 recovers eps-dominance, kappa -> 1
  approaches plain Pareto dominance (kappa = 1 itself is singular and
  rejected).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import MAX

# Absolute tolerance on the cone-weight nonnegativity test. The relation
# is exact mathematically; the guard only absorbs factorization rounding
# and sits far below any epsilon scale in use.
LAMBDA_TOL = 1e-9


def epsilon_vector(values) -> np.ndarray:
    """Validate a per-objective epsilon vector (all strictly positive)."""
    eps = np.ascontiguousarray(values, dtype=np.float64)
    if eps.ndim != 1:
        raise ValueError("epsilon must be one-dimensional")
    if not np.all(eps > 0.0):
        raise ValueError("epsilon components must be strictly positive")
    return eps


@dataclass(frozen=True)
class ConeMatrix:
    """Cone-dominance matrix with its cached factorization.

    Row i carries eps_i on the diagonal and kappa * eps_i elsewhere.
    ``inv`` is the LU-derived inverse, computed once at construction and
    reused by every comparison; ``tol`` is the nonnegativity guard for
    the cone weights.
    """

    kappa: float
    eps: np.ndarray
    psi: np.ndarray
    inv: np.ndarray
    tol: float = LAMBDA_TOL

    @property
    def m(self) -> int:
        return self.eps.shape[0]


def build_cone_matrix(eps, kappa: float, tol: float = LAMBDA_TOL) -> ConeMatrix:
    """Build the m x m cone matrix for ``eps`` and ``kappa`` in [0, 1)."""
    eps = epsilon_vector(eps).copy()
    if not 0.0 <= kappa < 1.0:
        raise ValueError(f"kappa out of range: {kappa!r} (expected [0, 1))")
    m = eps.shape[0]
    psi = np.full((m, m), kappa, dtype=np.float64)
    np.fill_diagonal(psi, 1.0)
    psi *= eps[:, None]
    inv = np.ascontiguousarray(np.linalg.inv(psi))
    psi.flags.writeable = False
    inv.flags.writeable = False
    eps.flags.writeable = False
    return ConeMatrix(kappa=float(kappa), eps=eps, psi=psi, inv=inv, tol=tol)


def _check_lengths(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def pareto_dominates(a, b) -> bool:
    """True iff a <= b componentwise and a != b (minimization)."""
    a, b = _check_lengths(a, b)
    return _kernels.dominates(a, b)


def eps_dominates(a, b, eps) -> bool:
    """Additive epsilon-dominance of a over b."""
    a, b = _check_lengths(a, b)
    return _kernels.eps_dominates(a, b, epsilon_vector(eps))


def cone_eps_dominates(a, b, cone: ConeMatrix) -> bool:
    """Cone epsilon-dominance of a over b under ``cone``."""
    a, b = _check_lengths(a, b)
    if a.shape[0] != cone.m:
        raise ValueError(f"cone built for m={cone.m}, vectors have m={a.shape[0]}")
    return _kernels.cone_dominates(a, b, cone.eps, cone.inv, cone.tol)


def _lattice(y: np.ndarray, eps: np.ndarray, sense) -> np.ndarray:
    """Integer lattice coordinates of the box holding ``y``.

    Floors (or ceils, for maximized objectives) against the actual
    products k * eps rather than the rounded quotient, so exact multiples
    always index their own corner and indexing is idempotent.
    """
    k = np.floor(y / eps)
    k = np.where((k + 1.0) * eps <= y, k + 1.0, k)
    k = np.where(k * eps > y, k - 1.0, k)
    if sense is not None:
        up = np.array([s == MAX for s in sense])
        if up.any():
            c = np.ceil(y / eps)
            c = np.where((c - 1.0) * eps >= y, c - 1.0, c)
            c = np.where(c * eps < y, c + 1.0, c)
            k = np.where(up, c, k)
    return k


def box_index(y, eps, sense=None) -> np.ndarray:
    """Grid corner assigned to ``y``: floor multiples of eps for minimized
    objectives, ceil multiples for maximized ones."""
    y = np.asarray(y, dtype=np.float64)
    eps = epsilon_vector(eps)
    return eps * _lattice(y, eps, sense)


def box_key(y, eps, sense=None) -> tuple:
    """Integer lattice coordinates of the box (hashable, bit-exact)."""
    y = np.asarray(y, dtype=np.float64)
    eps = epsilon_vector(eps)
    return tuple(int(v) for v in _lattice(y, eps, sense))


def box_origin_distance(y, eps, sense=None) -> float:
    """Euclidean distance from ``y`` to its box corner."""
    y = np.asarray(y, dtype=np.float64)
    d = y - box_index(y, eps, sense)
    return float(np.sqrt(np.sum(d * d)))


def eps_for_target_size(T: int, K: float, m: int) -> float:
    """Epsilon giving at most T non-eps-dominated points on a linear front
    spanning [1, K] in every objective: (K-1) / T^(1/(m-1))."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if T < 1:
        raise ValueError("T must be >= 1")
    if K <= 1.0:
        raise ValueError("K must be > 1")
    return (K - 1.0) / T ** (1.0 / (m - 1))


def _cone_size_poly(eps: float, T: int, K: float, m: int) -> float:
    return ((T - 1) / m) * eps ** (m - 1) + (K - 1.0) ** (m - 2) * eps - (K - 1.0) ** (m - 1)


def cone_eps_for_target_size(T: int, K: float, m: int, rtol: float = 1e-12) -> float:
    """Epsilon giving at most T cone-nondominated archive points.

    Unique positive root of ((T-1)/m) eps^(m-1) + (K-1)^(m-2) eps
    - (K-1)^(m-1) = 0, found by bisection on (0, K-1].
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if T < 2:
        raise ValueError("T must be >= 2")
    if K <= 1.0:
        raise ValueError("K must be > 1")
    lo, hi = 0.0, K - 1.0
    if _cone_size_poly(hi, T, K, m) < 0.0:
        raise ValueError("no sign change on bracket")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if _cone_size_poly(mid, T, K, m) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def archive_capacity_bound(eps, K_per_objective, m: int) -> float:
    """Upper bound on cone-archive cardinality for fronts inside the
    declared [1, K_i] ranges (empty products count as 1)."""
    eps = epsilon_vector(eps)
    K = np.asarray(K_per_objective, dtype=np.float64)
    if np.any(K <= 1.0):
        raise ValueError("all K_i must be > 1")
    ratios = (K - 1.0) / eps
    p1 = float(np.prod(ratios[: m - 1])) if m >= 2 else 1.0
    p2 = float(np.prod(ratios[: m - 2])) if m >= 3 else 1.0
    return m * (p1 - p2) + 1.0
