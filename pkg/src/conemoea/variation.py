"""Real-coded variation and selection operators used by all six MOEAs.

Draw order is part of each operator's contract: identical inputs and an
identically seeded stream reproduce identical outputs, so runs replay
bit-for-bit. The recombination keeps the classic unbounded form with a
final clip to the variable bounds; no bounded-spread variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


class RngStream:
    """Seedable deterministic random stream (64-bit PCG).

    Identical seeds yield identical draw sequences across runs and
    platforms. Each optimization run owns exactly one stream; the bench
    layer derives the stream for run r as base_seed + r, and ``split``
    produces independent child streams from a parent seed when needed.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def random(self) -> float:
        return float(self._gen.random())

    def integers(self, n: int) -> int:
        return int(self._gen.integers(n))

    def uniform(self, lower, upper, size=None) -> np.ndarray:
        return self._gen.uniform(lower, upper, size)

    def split(self, count: int) -> list["RngStream"]:
        children = np.random.SeedSequence(self.seed).spawn(count)
        return [RngStream(int(c.generate_state(1, np.uint64)[0])) for c in children]


@dataclass(frozen=True)
class VariationConfig:
    """Distribution indices and application probabilities for SBX and
    polynomial mutation."""

    eta_xover: float
    eta_mut: float
    p_xover: float = 1.0
    p_mut: float = 0.1

    def __post_init__(self):
        if not (0.0 <= self.p_xover <= 1.0 and 0.0 <= self.p_mut <= 1.0):
            raise ValueError("probabilities must lie in [0, 1]")
        if self.eta_xover < 0.0 or self.eta_mut < 0.0:
            raise ValueError("distribution indices must be >= 0")


def sbx_crossover(p1, p2, cfg: VariationConfig, bounds, rng: RngStream):
    """Simulated binary crossover; returns two children clipped to bounds.

    One gate draw decides whether to recombine at all. Each variable then
    recombines with probability 0.5 (one draw): a spread factor from one
    further draw blends the parent pair, and one more draw exchanges the
    blended pair between the children with probability 0.5. Unexchanged,
    unrecombined variables copy straight through. The exchange is what
    makes children mosaics of both parents instead of near-copies of one;
    the pair's per-variable mean is preserved either way.
    """
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    if p1.shape != p2.shape:
        raise ValueError("parents must have equal length")
    lower, upper = bounds
    if rng.random() >= cfg.p_xover:
        return p1.copy(), p2.copy()
    c1 = p1.copy()
    c2 = p2.copy()
    exponent = 1.0 / (cfg.eta_xover + 1.0)
    for i in range(p1.shape[0]):
        if rng.random() > 0.5:
            continue
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** exponent
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** exponent
        lo_child = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i])
        hi_child = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i])
        if rng.random() <= 0.5:
            c1[i], c2[i] = hi_child, lo_child
        else:
            c1[i], c2[i] = lo_child, hi_child
    np.clip(c1, lower, upper, out=c1)
    np.clip(c2, lower, upper, out=c2)
    return c1, c2


def polynomial_mutation(x, cfg: VariationConfig, bounds, rng: RngStream) -> np.ndarray:
    """Polynomial mutation; each variable perturbs with probability p_mut
    by delta scaled to its bound width, clipped back into bounds."""
    x = np.asarray(x, dtype=np.float64).copy()
    lower, upper = bounds
    lower = np.broadcast_to(np.asarray(lower, dtype=np.float64), x.shape)
    upper = np.broadcast_to(np.asarray(upper, dtype=np.float64), x.shape)
    exponent = 1.0 / (cfg.eta_mut + 1.0)
    for i in range(x.shape[0]):
        if rng.random() >= cfg.p_mut:
            continue
        u = rng.random()
        if u < 0.5:
            delta = (2.0 * u) ** exponent - 1.0
        else:
            delta = 1.0 - (2.0 * (1.0 - u)) ** exponent
        x[i] = min(max(x[i] + delta * (upper[i] - lower[i]), lower[i]), upper[i])
    return x


def tournament_select(pop, rng: RngStream):
    """Binary tournament on penalized objectives: two distinct members,
    the Pareto-dominating one wins, mutual nondominance picks uniformly."""
    n = len(pop)
    if n == 0:
        raise ValueError("empty population")
    if n == 1:
        return pop[0]
    i = rng.integers(n)
    j = rng.integers(n - 1)
    if j >= i:
        j += 1
    a, b = pop[i], pop[j]
    if _kernels.dominates(a.penalized_f, b.penalized_f):
        return a
    if _kernels.dominates(b.penalized_f, a.penalized_f):
        return b
    return a if rng.random() < 0.5 else b
