"""The sixteen benchmark problems, penalization, and reference fronts.

Problems: Deb52, Pol, ZDT1-4, ZDT6 (two objectives) and DTLZ1-9 (three
objectives; DTLZ2 also accepts an objective count for scaling studies).
All objectives are minimized. DTLZ8/9 carry inequality constraints in
the g(x) >= 0 convention; internally each is negated to the <= 0 form
and its violation magnitude max(0, -g) feeds a simple penalty added to
every objective.

Reference fronts come from closed-form generators where the front has
one (Deb52, the ZDTs, DTLZ1/2/5) and from packaged data files otherwise
(Pol, DTLZ3/4/6/7/8/9). Front files are plain text: one point per line,
whitespace-separated decimals, '#' comment lines ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .core import Solution, decision_vector

PENALTY_FACTOR = 1000.0

# Problems whose reference front ships as a packaged data file.
FILE_FRONT_IDS = ("pol", "dtlz3", "dtlz4", "dtlz6", "dtlz7", "dtlz8", "dtlz9")


@dataclass(frozen=True, eq=False)
class Problem:
    """Benchmark definition: dimensions, bounds, constraints, budget."""

    id: str
    n: int
    m: int
    lower: np.ndarray
    upper: np.ndarray
    n_g: int
    default_budget: int
    _fn: callable = field(repr=False)

    @property
    def bounds(self):
        return self.lower, self.upper


@dataclass(frozen=True, eq=False)
class ReferenceFront:
    """Dense sampling of a true Pareto front."""

    points: np.ndarray
    source: str | None = None

    def __len__(self) -> int:
        return self.points.shape[0]


def penalize(f, violations) -> np.ndarray:
    """Add PENALTY_FACTOR times the total violation to every objective."""
    f = np.asarray(f, dtype=np.float64)
    total = float(np.sum(violations)) if np.size(violations) else 0.0
    if total == 0.0:
        return f
    return f + PENALTY_FACTOR * total


def evaluate(problem: Problem, x) -> Solution:
    """Evaluate ``x`` on ``problem``; raises on wrong dimension or bounds."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (problem.n,):
        raise ValueError(f"{problem.id} expects {problem.n} variables, got shape {x.shape}")
    x = decision_vector(x, problem.lower, problem.upper)
    f, g = problem._fn(x)
    f = np.asarray(f, dtype=np.float64)
    if g is None:
        violations = np.zeros(0)
    else:
        violations = np.maximum(0.0, -np.asarray(g, dtype=np.float64))
    pf = penalize(f, violations)
    f.flags.writeable = False
    violations.flags.writeable = False
    pf.flags.writeable = False
    return Solution(x=x, f=f, violations=violations, penalized_f=pf)


# ---------------------------------------------------------------------------
# objective functions

def _deb52(x):
    f1 = 1.0 - math.exp(-4.0 * x[0]) * math.sin(10.0 * math.pi * x[0]) ** 4
    g = 1.0 + x[1] * x[1]
    h = 1.0 - (f1 / g) ** 10 if f1 <= g else 0.0
    return np.array([f1, g * h]), None


_POL_A1 = 0.5 * math.sin(1.0) - 2.0 * math.cos(1.0) + math.sin(2.0) - 1.5 * math.cos(2.0)
_POL_A2 = 1.5 * math.sin(1.0) - math.cos(1.0) + 2.0 * math.sin(2.0) - 0.5 * math.cos(2.0)


def _pol(x):
    b1 = 0.5 * math.sin(x[0]) - 2.0 * math.cos(x[0]) + math.sin(x[1]) - 1.5 * math.cos(x[1])
    b2 = 1.5 * math.sin(x[0]) - math.cos(x[0]) + 2.0 * math.sin(x[1]) - 0.5 * math.cos(x[1])
    f1 = 1.0 + (_POL_A1 - b1) ** 2 + (_POL_A2 - b2) ** 2
    f2 = (x[0] + 3.0) ** 2 + (x[1] + 1.0) ** 2
    return np.array([f1, f2]), None


def _zdt_g(x):
    return 1.0 + 9.0 * np.sum(x[1:]) / (x.shape[0] - 1)


def _zdt1(x):
    g = _zdt_g(x)
    f1 = x[0]
    return np.array([f1, g * (1.0 - math.sqrt(f1 / g))]), None


def _zdt2(x):
    g = _zdt_g(x)
    f1 = x[0]
    return np.array([f1, g * (1.0 - (f1 / g) ** 2)]), None


def _zdt3(x):
    g = _zdt_g(x)
    f1 = x[0]
    h = f1 / g
    return np.array([f1, g * (1.0 - math.sqrt(h) - h * math.sin(10.0 * math.pi * f1))]), None


def _zdt4(x):
    tail = x[1:]
    g = 1.0 + 10.0 * (x.shape[0] - 1) + np.sum(tail * tail - 10.0 * np.cos(4.0 * math.pi * tail))
    f1 = x[0]
    return np.array([f1, g * (1.0 - math.sqrt(f1 / g))]), None


def _zdt6(x):
    g = 1.0 + 9.0 * (np.sum(x[1:]) / (x.shape[0] - 1)) ** 0.25
    f1 = 1.0 - math.exp(-4.0 * x[0]) * math.sin(6.0 * math.pi * x[0]) ** 6
    return np.array([f1, g * (1.0 - (f1 / g) ** 2)]), None


def _g_multimodal(xm):
    t = xm - 0.5
    return 100.0 * (xm.shape[0] + np.sum(t * t - np.cos(20.0 * math.pi * t)))


def _g_sphere(xm):
    t = xm - 0.5
    return float(np.sum(t * t))


def _dtlz1(x):
    g = _g_multimodal(x[2:])
    s = 0.5 * (1.0 + g)
    f = np.array([s * x[0] * x[1], s * x[0] * (1.0 - x[1]), s * (1.0 - x[0])])
    return f, None


def _dtlz2_family(x, m, g, alpha):
    theta = (x[: m - 1] ** alpha) * (math.pi / 2.0)
    cos = np.cos(theta)
    sin = np.sin(theta)
    f = np.empty(m)
    scale = 1.0 + g
    for j in range(m):
        k = m - 1 - j
        val = scale * np.prod(cos[:k])
        if j > 0:
            val *= sin[k]
        f[j] = val
    return f


def _make_dtlz2(m, multimodal=False, alpha=1.0):
    def fn(x):
        xm = x[m - 1 :]
        g = _g_multimodal(xm) if multimodal else _g_sphere(xm)
        return _dtlz2_family(x, m, g, alpha), None

    return fn


def _dtlz5_curve(x, g):
    scale = 1.0 + g
    t1 = x[0] * math.pi / 2.0
    t2 = math.pi / (4.0 * scale) * (1.0 + 2.0 * g * x[1])
    return np.array(
        [
            scale * math.cos(t1) * math.cos(t2),
            scale * math.cos(t1) * math.sin(t2),
            scale * math.sin(t1),
        ]
    )


def _dtlz5(x):
    return _dtlz5_curve(x, _g_sphere(x[2:])), None


def _dtlz6(x):
    return _dtlz5_curve(x, float(np.sum(x[2:] ** 0.1))), None


def _dtlz7(x):
    g = 1.0 + 9.0 / 20.0 * np.sum(x[2:])
    f1, f2 = x[0], x[1]
    h = 3.0 - (
        f1 / (1.0 + g) * (1.0 + math.sin(3.0 * math.pi * f1))
        + f2 / (1.0 + g) * (1.0 + math.sin(3.0 * math.pi * f2))
    )
    return np.array([f1, f2, (1.0 + g) * h]), None


def _dtlz8(x):
    f = 0.1 * np.add.reduceat(x, [0, 10, 20])
    g = np.array(
        [
            f[2] + 4.0 * f[0] - 1.0,
            f[2] + 4.0 * f[1] - 1.0,
            2.0 * f[2] + f[0] + f[1] - 1.0,
        ]
    )
    return f, g


def _dtlz9(x):
    f = np.add.reduceat(x**0.1, [0, 10, 20])
    g = np.array([f[2] ** 2 + f[0] ** 2 - 1.0, f[2] ** 2 + f[1] ** 2 - 1.0])
    return f, g


def _unit_bounds(n):
    return np.zeros(n), np.ones(n)


def make_problem(pid: str, m: int | None = None) -> Problem:
    """Instantiate a benchmark problem by id (case-insensitive)."""
    pid = pid.lower()
    if m is not None and pid != "dtlz2":
        raise ValueError("objective count is only configurable for dtlz2")
    if pid == "deb52":
        lo, up = _unit_bounds(2)
        return Problem("deb52", 2, 2, lo, up, 0, 20_000, _deb52)
    if pid == "pol":
        lo = np.full(2, -math.pi)
        up = np.full(2, math.pi)
        return Problem("pol", 2, 2, lo, up, 0, 20_000, _pol)
    if pid in ("zdt1", "zdt2", "zdt3"):
        lo, up = _unit_bounds(30)
        fn = {"zdt1": _zdt1, "zdt2": _zdt2, "zdt3": _zdt3}[pid]
        return Problem(pid, 30, 2, lo, up, 0, 20_000, fn)
    if pid == "zdt4":
        lo = np.concatenate(([0.0], np.full(9, -5.0)))
        up = np.concatenate(([1.0], np.full(9, 5.0)))
        return Problem("zdt4", 10, 2, lo, up, 0, 100_000, _zdt4)
    if pid == "zdt6":
        lo, up = _unit_bounds(10)
        return Problem("zdt6", 10, 2, lo, up, 0, 20_000, _zdt6)
    if pid == "dtlz1":
        lo, up = _unit_bounds(7)
        return Problem("dtlz1", 7, 3, lo, up, 0, 20_000, _dtlz1)
    if pid == "dtlz2":
        m = 3 if m is None else int(m)
        if m < 2:
            raise ValueError("dtlz2 needs m >= 2")
        n = m + 9
        lo, up = _unit_bounds(n)
        return Problem("dtlz2", n, m, lo, up, 0, 20_000, _make_dtlz2(m))
    if pid == "dtlz3":
        lo, up = _unit_bounds(12)
        return Problem("dtlz3", 12, 3, lo, up, 0, 30_000, _make_dtlz2(3, multimodal=True))
    if pid == "dtlz4":
        lo, up = _unit_bounds(12)
        return Problem("dtlz4", 12, 3, lo, up, 0, 30_000, _make_dtlz2(3, alpha=100.0))
    if pid == "dtlz5":
        lo, up = _unit_bounds(12)
        return Problem("dtlz5", 12, 3, lo, up, 0, 20_000, _dtlz5)
    if pid == "dtlz6":
        lo, up = _unit_bounds(12)
        return Problem("dtlz6", 12, 3, lo, up, 0, 20_000, _dtlz6)
    if pid == "dtlz7":
        lo, up = _unit_bounds(22)
        return Problem("dtlz7", 22, 3, lo, up, 0, 20_000, _dtlz7)
    if pid == "dtlz8":
        lo, up = _unit_bounds(30)
        return Problem("dtlz8", 30, 3, lo, up, 3, 100_000, _dtlz8)
    if pid == "dtlz9":
        lo, up = _unit_bounds(30)
        return Problem("dtlz9", 30, 3, lo, up, 2, 50_000, _dtlz9)
    raise ValueError(f"unknown problem id {pid!r}")


PROBLEM_IDS = (
    "deb52",
    "pol",
    "zdt1",
    "zdt2",
    "zdt3",
    "zdt4",
    "zdt6",
    "dtlz1",
    "dtlz2",
    "dtlz3",
    "dtlz4",
    "dtlz5",
    "dtlz6",
    "dtlz7",
    "dtlz8",
    "dtlz9",
)


# ---------------------------------------------------------------------------
# reference fronts

def deb52_front_left_edge() -> float:
    """Smallest attainable first objective of Deb52 (start of its front).

    The minimum of f1 sits on the first oscillation hump, where the
    derivative condition reduces to 10*pi*x = arctan(10*pi).
    """
    x = math.atan(10.0 * math.pi) / (10.0 * math.pi)
    return 1.0 - math.exp(-4.0 * x) * math.sin(10.0 * math.pi * x) ** 4


def zdt6_front_left_edge() -> float:
    """Smallest attainable first objective of ZDT6 (6*pi*x = arctan(9*pi))."""
    x = math.atan(9.0 * math.pi) / (6.0 * math.pi)
    return 1.0 - math.exp(-4.0 * x) * math.sin(6.0 * math.pi * x) ** 6


def _simplex_lattice(m: int, s: int) -> np.ndarray:
    """All integer compositions of s into m parts, as an (L, m) array."""
    if m == 1:
        return np.array([[s]], dtype=np.float64)
    rows = []
    for head in range(s + 1):
        tail = _simplex_lattice(m - 1, s - head)
        rows.append(np.column_stack([np.full(tail.shape[0], head, dtype=np.float64), tail]))
    return np.vstack(rows)


def _lattice_for_count(m: int, count: int) -> np.ndarray:
    s = 1
    while math.comb(s + m - 1, m - 1) < count:
        s += 1
    lattice = _simplex_lattice(m, s) / s
    idx = np.floor(np.arange(count) * (lattice.shape[0] / count)).astype(int)
    return lattice[idx]


def sample_reference_front(problem: Problem, count: int) -> ReferenceFront:
    """Closed-form front sampling; raises for file-only problems."""
    if count < 2:
        raise ValueError("count must be >= 2")
    pid = problem.id
    if pid in ("zdt1", "zdt4"):
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([t, 1.0 - np.sqrt(t)])
    elif pid == "zdt2":
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([t, 1.0 - t * t])
    elif pid == "zdt3":
        grid = np.linspace(0.0, 1.0, 400_001)
        y = 1.0 - np.sqrt(grid) - grid * np.sin(10.0 * math.pi * grid)
        prev_min = np.concatenate(([np.inf], np.minimum.accumulate(y)[:-1]))
        keep = y < prev_min
        t, y = grid[keep], y[keep]
        idx = np.floor(np.arange(count) * (t.shape[0] / count)).astype(int)
        pts = np.column_stack([t[idx], y[idx]])
    elif pid == "zdt6":
        t = np.linspace(zdt6_front_left_edge(), 1.0, count)
        pts = np.column_stack([t, 1.0 - t * t])
    elif pid == "deb52":
        t = np.linspace(deb52_front_left_edge(), 1.0, count)
        pts = np.column_stack([t, 1.0 - t**10])
    elif pid == "dtlz1":
        pts = 0.5 * _lattice_for_count(problem.m, count)
    elif pid == "dtlz2":
        u = _lattice_for_count(problem.m, count)
        pts = u / np.linalg.norm(u, axis=1, keepdims=True)
    elif pid == "dtlz5":
        theta = np.linspace(0.0, math.pi / 2.0, count)
        c = np.cos(theta) / math.sqrt(2.0)
        pts = np.column_stack([c, c, np.sin(theta)])
    else:
        raise ValueError(
            f"{pid} has no closed-form front; load its packaged file via reference_front()"
        )
    return ReferenceFront(points=pts, source=None)


def _check_mutual_nondominance(pts: np.ndarray, source: str) -> None:
    n = pts.shape[0]
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, chunk):
        block = pts[start : start + chunk]
        le = np.all(pts[None, :, :] <= block[:, None, :], axis=2)
        lt = np.any(pts[None, :, :] < block[:, None, :], axis=2)
        if np.any(le & lt):
            i, j = np.nonzero(le & lt)
            raise ValueError(
                f"{source}: point {int(j[0])} dominates point {int(i[0]) + start}"
            )


def load_reference_front(path) -> ReferenceFront:
    """Load and validate a front file (whitespace-separated decimals)."""
    rows = []
    width = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                vals = [float(tok) for tok in text.split()]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed line: {exc}") from None
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise ValueError(f"{path}:{lineno}: expected {width} values, got {len(vals)}")
            rows.append(vals)
    if not rows:
        raise ValueError(f"{path}: empty front file")
    pts = np.asarray(rows, dtype=np.float64)
    _check_mutual_nondominance(pts, str(path))
    return ReferenceFront(points=pts, source=str(path))


def reference_front(problem: Problem, count: int = 5000) -> ReferenceFront:
    """Default front for a problem: generated when closed-form, else the
    packaged data file."""
    if problem.id in FILE_FRONT_IDS:
        path = resources.files("conemoea.data") / f"{problem.id}.front"
        with resources.as_file(path) as p:
            return load_reference_front(p)
    return sample_reference_front(problem, count)
