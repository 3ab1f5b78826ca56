"""Quality indicators: convergence, diversity, hypervolume, coverage.

All metrics operate on objective matrices (rows are points) under the
minimization convention. Fronts should be filtered to feasible points
before measurement; the bench layer does that.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricReport:
    """Per-run metric values; hv/cs are None when not applicable."""

    gamma: float
    delta: float
    hv: float | None
    cs: float | None
    cardinality: int


def _as_matrix(front) -> np.ndarray:
    arr = np.asarray(front, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("front must be a nonempty 2-D array of objective vectors")
    return arr


def _nearest_distances(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Distance from each row of A to its nearest row of B."""
    out = np.empty(A.shape[0])
    chunk = max(1, 4_000_000 // max(B.shape[0], 1))
    for start in range(0, A.shape[0], chunk):
        block = A[start : start + chunk]
        d2 = np.sum((block[:, None, :] - B[None, :, :]) ** 2, axis=2)
        out[start : start + block.shape[0]] = np.sqrt(d2.min(axis=1))
    return out


def convergence_gamma(front, reference) -> float:
    """Mean Euclidean distance from each front point to the nearest
    reference point; 0 means the front lies on the reference set."""
    H = _as_matrix(front)
    R = _as_matrix(reference)
    if H.shape[1] != R.shape[1]:
        raise ValueError("front and reference dimension mismatch")
    return float(_nearest_distances(H, R).mean())


def diversity_delta(front, reference) -> float:
    """Spread indicator combining extreme-point error and neighbor
    uniformity.

    Per objective, the extreme of a set is its member with the maximum
    value of that objective; the extreme error is the full Euclidean
    distance between the two extremes. Neighbor distances are
    nearest-neighbor within the front (any m; no consecutive-sorting
    2-D shortcut).
    """
    H = _as_matrix(front)
    R = _as_matrix(reference)
    if H.shape[0] < 2:
        raise ValueError("diversity needs at least two front points")
    m = H.shape[1]
    extremes = 0.0
    for i in range(m):
        h_ext = H[np.argmax(H[:, i])]
        r_ext = R[np.argmax(R[:, i])]
        extremes += float(np.sqrt(np.sum((h_ext - r_ext) ** 2)))
    d2 = np.sum((H[:, None, :] - H[None, :, :]) ** 2, axis=2)
    np.fill_diagonal(d2, np.inf)
    d = np.sqrt(d2.min(axis=1))
    dbar = d.mean()
    return float((extremes + np.sum(np.abs(d - dbar))) / (extremes + H.shape[0] * dbar))


def _hv2(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact 2-D hypervolume of points strictly inside the ref box."""
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]
    best = np.inf
    xs, ys = [], []
    for x, y in pts:
        if y < best:
            xs.append(x)
            ys.append(y)
            best = y
    xs.append(ref[0])
    total = 0.0
    for i in range(len(ys)):
        total += (xs[i + 1] - xs[i]) * (ref[1] - ys[i])
    return total


def hypervolume(front, ref) -> float:
    """Exact dominated hypervolume up to ``ref`` for 2 or 3 objectives.

    Points that do not strictly dominate the reference contribute
    nothing (clipped away with a warning).
    """
    H = _as_matrix(front)
    ref = np.asarray(ref, dtype=np.float64)
    m = H.shape[1]
    if m not in (2, 3):
        raise ValueError("hypervolume supports m in {2, 3}")
    inside = np.all(H < ref, axis=1)
    if not inside.all():
        warnings.warn(f"{int((~inside).sum())} point(s) do not dominate the reference; clipped")
        H = H[inside]
    if H.shape[0] == 0:
        return 0.0
    if m == 2:
        return float(_hv2(H, ref))
    order = np.argsort(H[:, 2], kind="stable")
    pts = H[order]
    zs = pts[:, 2]
    total = 0.0
    for i in range(pts.shape[0]):
        z_next = zs[i + 1] if i + 1 < pts.shape[0] else ref[2]
        depth = z_next - zs[i]
        if depth > 0.0:
            total += depth * _hv2(pts[: i + 1, :2], ref[:2])
    return float(total)


def coverage_many_sets(fronts) -> list[float]:
    """Fraction of the rival union each front covers.

    For front i the rival union is the multiset concatenation of all
    other fronts (duplicates retained); a point is covered when some
    member of front i dominates or equals it.
    """
    mats = [_as_matrix(f) for f in fronts]
    if len(mats) < 2:
        raise ValueError("coverage needs at least two fronts")
    out = []
    for i, X in enumerate(mats):
        U = np.vstack([mats[j] for j in range(len(mats)) if j != i])
        covered = 0
        chunk = max(1, 2_000_000 // max(X.shape[0], 1))
        for start in range(0, U.shape[0], chunk):
            block = U[start : start + chunk]
            cov = np.any(np.all(X[None, :, :] <= block[:, None, :], axis=2), axis=1)
            covered += int(cov.sum())
        out.append(covered / U.shape[0])
    return out
