"""Regenerate the packaged reference front files.

Fronts with a closed form are generated on demand by the library; the
problems handled here need either numerical extraction (pol, dtlz7) or
piecewise constructions (dtlz8), and the rest reuse known front shapes
(dtlz3/4 share the dtlz2 sphere, dtlz6 the dtlz5 curve, dtlz9 the
constraint-intersection curve). Output is deterministic.

Usage: python scripts/make_reference_fronts.py [out_dir]
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from conemoea.problems import _lattice_for_count, load_reference_front  # noqa: E402


def pareto_filter_2d(points: np.ndarray) -> np.ndarray:
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]
    keep = []
    best = np.inf
    for row in pts:
        if row[1] < best:
            keep.append(row)
            best = row[1]
    return np.asarray(keep)


def pareto_filter(points: np.ndarray) -> np.ndarray:
    keep = np.ones(points.shape[0], dtype=bool)
    for i in range(points.shape[0]):
        if not keep[i]:
            continue
        le = np.all(points <= points[i], axis=1)
        lt = np.any(points < points[i], axis=1)
        if np.any(le & lt & keep):
            keep[i] = False
    return points[keep]


def subsample(points: np.ndarray, count: int) -> np.ndarray:
    if points.shape[0] <= count:
        return points
    idx = np.floor(np.arange(count) * (points.shape[0] / count)).astype(int)
    return points[idx]


def pol_front(count=1500) -> np.ndarray:
    grid = np.linspace(-math.pi, math.pi, 1500)
    x1, x2 = np.meshgrid(grid, grid, indexing="ij")
    a1 = 0.5 * math.sin(1) - 2 * math.cos(1) + math.sin(2) - 1.5 * math.cos(2)
    a2 = 1.5 * math.sin(1) - math.cos(1) + 2 * math.sin(2) - 0.5 * math.cos(2)
    b1 = 0.5 * np.sin(x1) - 2 * np.cos(x1) + np.sin(x2) - 1.5 * np.cos(x2)
    b2 = 1.5 * np.sin(x1) - np.cos(x1) + 2 * np.sin(x2) - 0.5 * np.cos(x2)
    f1 = 1 + (a1 - b1) ** 2 + (a2 - b2) ** 2
    f2 = (x1 + 3) ** 2 + (x2 + 1) ** 2
    pts = np.column_stack([f1.ravel(), f2.ravel()])
    return subsample(pareto_filter_2d(pts), count)


def sphere_front(count=2000) -> np.ndarray:
    u = _lattice_for_count(3, count)
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def dtlz5_curve(count=2000) -> np.ndarray:
    theta = np.linspace(0.0, math.pi / 2.0, count)
    c = np.cos(theta) / math.sqrt(2.0)
    return np.column_stack([c, c, np.sin(theta)])


def dtlz7_front(count=2000) -> np.ndarray:
    t = np.linspace(0.0, 1.0, 200_001)
    phi = t * (1.0 + np.sin(3.0 * math.pi * t))
    prev_max = np.concatenate(([-np.inf], np.maximum.accumulate(phi)[:-1]))
    keep = phi > prev_max
    axis = t[keep]
    per_axis = int(math.ceil(math.sqrt(count)))
    axis = subsample(axis, per_axis)
    a, b = np.meshgrid(axis, axis, indexing="ij")
    a, b = a.ravel(), b.ravel()
    pa = a * (1.0 + np.sin(3.0 * math.pi * a))
    pb = b * (1.0 + np.sin(3.0 * math.pi * b))
    pts = np.column_stack([a, b, 6.0 - pa - pb])
    return subsample(pts, count)


def dtlz8_front(count=2000) -> np.ndarray:
    n_line = max(count // 6, 50)
    t = np.linspace(0.0, 1.0 / 6.0, n_line)
    line = np.column_stack([t, t, 1.0 - 4.0 * t])
    # plane 2*f3 + f1 + f2 = 1 over the triangle (1/6,1/6), (1/4,3/4), (3/4,1/4)
    verts = np.array([[1.0 / 6.0, 1.0 / 6.0], [0.25, 0.75], [0.75, 0.25]])
    bary = _lattice_for_count(3, count - n_line)
    ab = bary @ verts
    plane = np.column_stack([ab[:, 0], ab[:, 1], 0.5 * (1.0 - ab.sum(axis=1))])
    pts = np.vstack([line, plane])
    return pareto_filter(pts)


def dtlz9_front(count=2000) -> np.ndarray:
    f3 = np.linspace(0.0, 1.0, count)
    f = np.sqrt(np.maximum(0.0, 1.0 - f3 * f3))
    return np.column_stack([f, f, f3])


def write_front(path: Path, pts: np.ndarray, label: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# {label} reference front ({pts.shape[0]} points)\n")
        for row in pts:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")
    load_reference_front(path)  # validates mutual nondominance
    print(f"{path}: {pts.shape[0]} points")


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "src" / "conemoea" / "data"
    )
    out.mkdir(parents=True, exist_ok=True)
    write_front(out / "pol.front", pol_front(), "pol")
    sphere = sphere_front()
    write_front(out / "dtlz3.front", sphere, "dtlz3")
    write_front(out / "dtlz4.front", sphere, "dtlz4")
    write_front(out / "dtlz6.front", dtlz5_curve(), "dtlz6")
    write_front(out / "dtlz7.front", dtlz7_front(), "dtlz7")
    write_front(out / "dtlz8.front", dtlz8_front(), "dtlz8")
    write_front(out / "dtlz9.front", dtlz9_front(), "dtlz9")


if __name__ == "__main__":
    main()
