"""Foundational value types shared by every other module.

All relations in this package assume minimization. Problems whose natural
formulation maximizes an objective are negated when they are defined, so
only the box indexing (which supports an explicit per-objective sense)
ever sees a "max" flag.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

MIN = "min"
MAX = "max"


def objective_vector(values) -> np.ndarray:
    """Validate and freeze an objective vector (m >= 2, all finite)."""
    f = np.asarray(values, dtype=np.float64)
    if f.ndim != 1 or f.shape[0] < 2:
        raise ValueError(f"objective vector needs >= 2 components, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("objective vector has non-finite components")
    f = f.copy()
    f.flags.writeable = False
    return f


def decision_vector(values, lower=None, upper=None) -> np.ndarray:
    """Validate and freeze a decision vector, optionally against bounds."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError(f"decision vector needs >= 1 components, got shape {x.shape}")
    if lower is not None and (np.any(x < lower) or np.any(x > upper)):
        raise ValueError("decision vector violates variable bounds")
    x = x.copy()
    x.flags.writeable = False
    return x


def minimize_all(m: int) -> tuple[str, ...]:
    """Per-objective sense with every objective minimized."""
    return (MIN,) * m


@dataclass(frozen=True, eq=False)
class Solution:
    """A decision vector with its objectives and constraint violations.

    ``violations`` holds nonnegative magnitudes, one per constraint;
    a solution is feasible iff every entry is zero, and then
    ``penalized_f`` equals ``f``.
    """

    x: np.ndarray
    f: np.ndarray
    violations: np.ndarray = field(default_factory=lambda: _EMPTY)
    penalized_f: np.ndarray | None = None

    def __post_init__(self):
        if self.penalized_f is None:
            object.__setattr__(self, "penalized_f", self.f)
        if np.any(np.asarray(self.violations) < 0.0):
            raise ValueError("constraint violations must be nonnegative")

    @property
    def feasible(self) -> bool:
        return not np.any(self.violations > 0.0)


_EMPTY = np.zeros(0)
_EMPTY.flags.writeable = False


def ideal_point(vectors) -> np.ndarray:
    """Componentwise best (minimum) over a nonempty set of objective vectors."""
    arr = np.asarray(list(vectors), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("empty set")
    if arr.ndim != 2:
        raise ValueError("objective vectors must share a common length")
    return arr.min(axis=0)


def reference_point(front, factor: float) -> np.ndarray:
    """Point componentwise worse than a front by ``factor`` (e.g. 0.1 = 10%).

    Components with positive maxima are scaled by (1 + factor). A component
    whose maximum is <= 0 cannot be worsened multiplicatively, so it is
    shifted by factor times the component's range over the front instead;
    a zero range there is flagged as degenerate.
    """
    arr = np.asarray(list(front), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("empty front")
    if factor < 0.0:
        raise ValueError("factor must be >= 0")
    hi = arr.max(axis=0)
    rng = hi - arr.min(axis=0)
    ref = np.where(hi > 0.0, hi * (1.0 + factor), hi + factor * np.abs(rng))
    if np.any((hi <= 0.0) & (rng == 0.0)):
        warnings.warn("degenerate reference component: max <= 0 with zero range")
    return ref
