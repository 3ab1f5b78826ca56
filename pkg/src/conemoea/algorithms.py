"""The six MOEAs: the generational NSGA-II family and SPEA2, plus the
steady-state epsilon / cone-epsilon engines.

Every run is single-threaded and fully determined by (problem, config,
seed). Generational engines merge parents and offspring each generation
and reduce back to the population size with their environmental
selection; steady-state engines evolve a population and a bounded
archive together, one offspring at a time.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .archive import BoundedArchive
from .core import Solution
from .dominance import build_cone_matrix, epsilon_vector
from .problems import Problem, evaluate
from .variation import RngStream, VariationConfig, polynomial_mutation, sbx_crossover, tournament_select

GENERATIONAL = ("NSGA2", "NSGA2STAR", "CNSGA2", "SPEA2")
STEADY_STATE = ("EPSMOEA", "CONEEPSMOEA")
ALGORITHM_IDS = GENERATIONAL + STEADY_STATE


@dataclass(frozen=True)
class AlgorithmConfig:
    algorithm: str
    pop_size: int = 100
    archive_size: int = 100
    eps: object = None
    kappa: float = 0.5
    variation: VariationConfig | None = None
    budget: int | None = None
    seed: int = 0

    def __post_init__(self):
        alg = self.algorithm.upper().replace("-", "").replace("*", "STAR")
        if alg not in ALGORITHM_IDS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        object.__setattr__(self, "algorithm", alg)
        if self.pop_size < 2:
            raise ValueError("population size must be >= 2")


@dataclass(frozen=True, eq=False)
class RunResult:
    final_front: list[Solution]
    evaluations_used: int
    seed: int
    wall_time: float

    def objectives(self) -> np.ndarray:
        return np.asarray([s.penalized_f for s in self.final_front])


def _objective_matrix(solutions) -> np.ndarray:
    return np.ascontiguousarray([s.penalized_f for s in solutions], dtype=np.float64)


def nondominated(solutions) -> list[Solution]:
    """Rank-0 subset of a solution list, preserving order."""
    if not solutions:
        return []
    ranks = _kernels.nondominated_rank(_objective_matrix(solutions))
    return [s for s, r in zip(solutions, ranks) if r == 0]


def fast_nondominated_sort(solutions) -> list[list[Solution]]:
    """Partition into fronts: front 0 is the nondominated set, front k
    the nondominated set after removing fronts < k."""
    if not solutions:
        raise ValueError("empty population")
    ranks = _kernels.nondominated_rank(_objective_matrix(solutions))
    fronts = [[] for _ in range(int(ranks.max()) + 1)]
    for sol, r in zip(solutions, ranks):
        fronts[int(r)].append(sol)
    return fronts


def crowding_distance(front) -> np.ndarray:
    """Per-member crowding distance; boundary members get +inf, degenerate
    objectives (zero range) contribute nothing."""
    if not len(front):
        raise ValueError("empty front")
    F = _objective_matrix(front)
    n, m = F.shape
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for j in range(m):
        order = np.argsort(F[:, j], kind="stable")
        vals = F[order, j]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0.0:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return dist


def crowding_truncate(front, k: int, mode: str = "once") -> list[Solution]:
    """Reduce a front to k members by crowding.

    once: one crowding pass, drop the smallest-crowding members together.
    iterative: drop one minimum at a time, recomputing distances between
    removals. Ties resolve to the earliest index.
    """
    if k > len(front):
        raise ValueError(f"cannot truncate {len(front)} members to {k}")
    if mode not in ("once", "iterative"):
        raise ValueError(f"unknown mode {mode!r}")
    if k == len(front):
        return list(front)
    if mode == "once":
        dist = crowding_distance(front)
        drop = set(np.argsort(dist, kind="stable")[: len(front) - k].tolist())
        return [s for i, s in enumerate(front) if i not in drop]
    kept = list(front)
    while len(kept) > k:
        dist = crowding_distance(kept)
        kept.pop(int(np.argmin(dist)))
    return kept


def cluster_truncate_average_linkage(front, k: int) -> list[Solution]:
    """Reduce a front to k members by average-linkage clustering.

    Clusters merge pairwise at minimum average inter-cluster distance
    until k remain; each surviving cluster is represented by its member
    closest to the cluster centroid in objective space.
    """
    n = len(front)
    if k > n:
        raise ValueError(f"cannot truncate {n} members to {k}")
    if k == n:
        return list(front)
    F = _objective_matrix(front)
    diff = F[:, None, :] - F[None, :, :]
    D = np.sqrt(np.sum(diff * diff, axis=2))
    np.fill_diagonal(D, np.inf)
    sizes = np.ones(n)
    groups: dict[int, list[int]] = {i: [i] for i in range(n)}
    active = n
    while active > k:
        flat = int(np.argmin(D))
        i, j = divmod(flat, n)
        if i > j:
            i, j = j, i
        w = sizes[i] + sizes[j]
        merged = (sizes[i] * D[i] + sizes[j] * D[j]) / w
        D[i] = merged
        D[:, i] = merged
        D[i, i] = np.inf
        D[j, :] = np.inf
        D[:, j] = np.inf
        sizes[i] = w
        groups[i].extend(groups.pop(j))
        active -= 1
    reps = []
    for members in groups.values():
        centroid = F[members].mean(axis=0)
        gaps = np.sum((F[members] - centroid) ** 2, axis=1)
        reps.append(members[int(np.argmin(gaps))])
    return [front[i] for i in sorted(reps)]


def spea2_fitness(union) -> np.ndarray:
    """Strength-based fitness: raw dominance fitness plus nearest-neighbor
    density 1/(sigma_k + 2) with k = floor(sqrt(union size)). Nondominated
    members score below 1."""
    if not len(union):
        raise ValueError("empty union")
    F = _objective_matrix(union)
    n = F.shape[0]
    raw = _kernels.spea2_raw(F)
    if n == 1:
        return raw + 0.5
    d2 = np.sum((F[:, None, :] - F[None, :, :]) ** 2, axis=2)
    np.fill_diagonal(d2, np.inf)
    d2.sort(axis=1)
    k = min(max(int(math.sqrt(n)), 1), n - 1)
    sigma = np.sqrt(d2[:, k - 1])
    return raw + 1.0 / (sigma + 2.0)


def spea2_truncate(members, k: int) -> list[Solution]:
    """Drop members one at a time by the lexicographic nearest-distance
    rule (smallest distance to the nearest, then second nearest, ...)."""
    if k > len(members):
        raise ValueError(f"cannot truncate {len(members)} members to {k}")
    kept = list(members)
    while len(kept) > k:
        F = _objective_matrix(kept)
        d2 = np.sum((F[:, None, :] - F[None, :, :]) ** 2, axis=2)
        np.fill_diagonal(d2, np.inf)
        d2.sort(axis=1)
        rows = d2[:, :-1]
        victim = int(np.lexsort(rows.T[::-1])[0])
        kept.pop(victim)
    return kept


def _resolve_variation(config: AlgorithmConfig, problem: Problem) -> VariationConfig:
    if config.variation is not None:
        return config.variation
    return VariationConfig(eta_xover=15.0, eta_mut=20.0, p_xover=1.0, p_mut=1.0 / problem.n)


def _random_population(problem: Problem, size: int, rng: RngStream) -> list[Solution]:
    return [
        evaluate(problem, rng.uniform(problem.lower, problem.upper, problem.n))
        for _ in range(size)
    ]


def _make_offspring(problem, mating, cfg, rng, count) -> list[Solution]:
    out = []
    while len(out) < count:
        a = tournament_select(mating, rng)
        b = tournament_select(mating, rng)
        c1, c2 = sbx_crossover(a.x, b.x, cfg, problem.bounds, rng)
        out.append(evaluate(problem, polynomial_mutation(c1, cfg, problem.bounds, rng)))
        if len(out) < count:
            out.append(evaluate(problem, polynomial_mutation(c2, cfg, problem.bounds, rng)))
    return out


def _nsga_environmental(merged, size: int, truncate) -> list[Solution]:
    chosen: list[Solution] = []
    for front in fast_nondominated_sort(merged):
        if len(chosen) + len(front) <= size:
            chosen.extend(front)
        else:
            chosen.extend(truncate(front, size - len(chosen)))
            break
    return chosen


def _spea2_environmental(pop, archive, size: int) -> list[Solution]:
    union = list(pop) + list(archive)
    fitness = spea2_fitness(union)
    order = np.argsort(fitness, kind="stable")
    nond = [union[i] for i in order if fitness[i] < 1.0]
    if len(nond) > size:
        return spea2_truncate(nond, size)
    fill = [union[i] for i in order if fitness[i] >= 1.0]
    return (nond + fill)[:size]


def run_generational(problem: Problem, config: AlgorithmConfig, debug: bool = False) -> RunResult:
    """NSGA-II / NSGA-II* / C-NSGA-II / SPEA2 generational loop."""
    alg = config.algorithm
    if alg not in GENERATIONAL:
        raise ValueError(f"{alg} is not a generational algorithm")
    size = config.pop_size
    budget = problem.default_budget if config.budget is None else config.budget
    if budget < size:
        raise ValueError("budget smaller than one population")
    cfg = _resolve_variation(config, problem)
    rng = RngStream(config.seed)
    start = time.perf_counter()

    truncate = {
        "NSGA2": lambda front, k: crowding_truncate(front, k, "once"),
        "NSGA2STAR": lambda front, k: crowding_truncate(front, k, "iterative"),
        "CNSGA2": cluster_truncate_average_linkage,
    }.get(alg)

    pop = _random_population(problem, size, rng)
    evals = size
    archive: list[Solution] = []
    while evals + size <= budget:
        if alg == "SPEA2":
            archive = _spea2_environmental(pop, archive, config.archive_size)
            pop = _make_offspring(problem, archive, cfg, rng, size)
            evals += size
        else:
            offspring = _make_offspring(problem, pop, cfg, rng, size)
            evals += size
            pop = _nsga_environmental(pop + offspring, size, truncate)

    if alg == "SPEA2":
        final = nondominated(_spea2_environmental(pop, archive, config.archive_size))
    else:
        final = nondominated(pop)
    return RunResult(final, evals, config.seed, time.perf_counter() - start)


def run_steady_state(problem: Problem, config: AlgorithmConfig, debug: bool = False) -> RunResult:
    """Epsilon / cone-epsilon steady-state loop: one offspring per step,
    mating one Pareto-tournament parent from the population with one
    uniform draw from the archive; the offspring updates both."""
    alg = config.algorithm
    if alg not in STEADY_STATE:
        raise ValueError(f"{alg} is not a steady-state algorithm")
    if config.eps is None:
        raise ValueError("steady-state engines need an epsilon vector")
    eps = np.asarray(config.eps, dtype=np.float64)
    if eps.ndim == 0:
        eps = np.full(problem.m, float(eps))
    eps = epsilon_vector(eps)
    if eps.shape[0] != problem.m:
        raise ValueError(f"epsilon has {eps.shape[0]} components, problem has {problem.m}")

    size = config.pop_size
    budget = problem.default_budget if config.budget is None else config.budget
    if budget < size:
        raise ValueError("budget smaller than one population")
    cfg = _resolve_variation(config, problem)
    rng = RngStream(config.seed)
    start = time.perf_counter()

    if alg == "CONEEPSMOEA":
        archive = BoundedArchive(build_cone_matrix(eps, config.kappa))
    else:
        archive = BoundedArchive(eps)

    pop = _random_population(problem, size, rng)
    P = _objective_matrix(pop)
    for sol in pop:
        archive.insert(sol)
    if debug:
        archive.check_invariants()
    evals = size

    while evals < budget:
        p1 = tournament_select(pop, rng)
        if len(archive):
            p2 = archive.members[rng.integers(len(archive))]
        else:
            p2 = tournament_select(pop, rng)
        c1, c2 = sbx_crossover(p1.x, p2.x, cfg, problem.bounds, rng)
        child = c1 if rng.random() < 0.5 else c2
        sol = evaluate(problem, polynomial_mutation(child, cfg, problem.bounds, rng))
        evals += 1

        any_dom, mask = _kernels.scan_pareto(P, sol.penalized_f)
        beaten = np.nonzero(mask)[0]
        if beaten.size:
            slot = int(beaten[rng.integers(beaten.size)])
            pop[slot] = sol
            P[slot] = sol.penalized_f
        elif not any_dom:
            slot = rng.integers(size)
            pop[slot] = sol
            P[slot] = sol.penalized_f

        archive.insert(sol)
        if debug:
            archive.check_invariants()

    final = nondominated(archive.members)
    return RunResult(final, evals, config.seed, time.perf_counter() - start)


def run(problem: Problem, config: AlgorithmConfig, debug: bool = False) -> RunResult:
    """Dispatch to the generational or steady-state engine."""
    if config.algorithm in GENERATIONAL:
        return run_generational(problem, config, debug)
    return run_steady_state(problem, config, debug)
