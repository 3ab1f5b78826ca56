"""Experiment runner: configuration, per-problem defaults, persistence
and the statistical summaries used for cross-algorithm reporting.

A campaign is a list of (problem, algorithm) cells, each executed for a
number of runs. Run r of every cell uses seed base_seed + r, so the
coverage metric compares like-for-like initializations across
algorithms sharing a run index. Results land in one CSV with columns
problem, algorithm, run, seed, cardinality, gamma, delta, hv, cs,
wall_ms (missing metrics stay empty), plus one front file per run.
"""

from __future__ import annotations

import concurrent.futures
import csv
import math
import warnings
from configparser import ConfigParser
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .algorithms import STEADY_STATE, AlgorithmConfig, run
from .core import reference_point
from .metrics import convergence_gamma, coverage_many_sets, diversity_delta, hypervolume
from .problems import PROBLEM_IDS, ReferenceFront, load_reference_front, make_problem, reference_front
from .variation import VariationConfig

# Per-problem crossover/mutation distribution indices.
ETA_TABLE = {
    "deb52": (15.0, 20.0),
    "pol": (15.0, 20.0),
    "zdt1": (15.0, 20.0),
    "zdt3": (15.0, 20.0),
    "zdt6": (15.0, 20.0),
    "dtlz2": (15.0, 20.0),
    "dtlz4": (15.0, 20.0),
    "zdt4": (2.0, 20.0),
    "dtlz1": (2.0, 20.0),
    "dtlz3": (2.0, 20.0),
    "zdt2": (2.0, 5.0),
    "dtlz5": (2.0, 5.0),
    "dtlz6": (2.0, 5.0),
    "dtlz7": (2.0, 5.0),
    "dtlz8": (2.0, 5.0),
    "dtlz9": (2.0, 5.0),
}

# Default epsilon vectors targeting ~100 archive members. Each entry is
# (calculated, estimated); None means the calculated value already does
# the job and is reused.
EPS_TABLE = {
    "EPSMOEA": {
        "deb52": ([0.0083, 0.010], [0.003, 0.003]),
        "pol": ([0.16, 0.25], [0.038, 0.038]),
        "zdt1": ([0.010, 0.010], [0.0075, 0.0075]),
        "zdt2": ([0.010, 0.010], [0.0076, 0.0076]),
        "zdt3": ([0.0085, 0.018], [0.0026, 0.0026]),
        "zdt4": ([0.010, 0.010], [0.0065, 0.0065]),
        "zdt6": ([0.0072, 0.0093], [0.0067, 0.0067]),
        "dtlz1": ([0.05, 0.05, 0.05], [0.02, 0.02, 0.05]),
        "dtlz2": ([0.10, 0.10, 0.10], [0.06, 0.06, 0.066]),
        "dtlz3": ([0.10, 0.10, 0.10], [0.06, 0.06, 0.066]),
        "dtlz4": ([0.10, 0.10, 0.10], [0.062, 0.062, 0.062]),
        "dtlz5": ([0.007, 0.007, 0.01], [0.005, 0.005, 0.005]),
        "dtlz6": ([0.007, 0.007, 0.01], [0.005, 0.005, 0.005]),
        "dtlz7": ([0.086, 0.086, 0.3386], [0.05, 0.05, 0.05]),
        "dtlz8": ([0.075, 0.075, 0.10], [0.02, 0.02, 0.04]),
        "dtlz9": ([0.010, 0.010, 0.010], [0.025, 0.025, 0.025]),
    },
    "CONEEPSMOEA": {
        "deb52": ([0.0164, 0.0198], None),
        "pol": ([0.3168, 0.4950], [0.20, 0.33]),
        "zdt1": ([0.0198, 0.0198], None),
        "zdt2": ([0.0198, 0.0198], None),
        "zdt3": ([0.0168, 0.0356], [0.012, 0.025]),
        "zdt4": ([0.0198, 0.0198], None),
        "zdt6": ([0.0143, 0.0184], None),
        "dtlz1": ([0.0798, 0.0798, 0.0798], [0.05, 0.05, 0.0833]),
        "dtlz2": ([0.1595, 0.1595, 0.1595], None),
        "dtlz3": ([0.1595, 0.1595, 0.1595], None),
        "dtlz4": ([0.1595, 0.1595, 0.1595], None),
        "dtlz5": ([0.014, 0.014, 0.02], [0.025, 0.025, 0.025]),
        "dtlz6": ([0.014, 0.014, 0.02], [0.017, 0.017, 0.017]),
        "dtlz7": ([0.1372, 0.1372, 0.5404], [0.12, 0.12, 0.30]),
        "dtlz8": ([0.12, 0.12, 0.16], [0.03, 0.03, 0.03]),
        "dtlz9": ([0.0198, 0.0198, 0.0198], [0.27, 0.27, 0.25]),
    },
}

# Redundant weakly-nondominated solutions make the hypervolume
# misleading on these problems, so it is not reported for them.
HV_SUPPRESSED = frozenset({"dtlz8", "dtlz9"})

REFERENCE_MARGIN = 0.1
CSV_COLUMNS = ("problem", "algorithm", "run", "seed", "cardinality", "gamma", "delta", "hv", "cs", "wall_ms")

ASCENDING_METRICS = frozenset({"gamma", "delta"})
DESCENDING_METRICS = frozenset({"hv", "cs"})


def default_epsilon(problem_id: str, algorithm: str, mode: str = "estimated") -> list[float]:
    """Table-based epsilon defaults; mode is 'calculated' or 'estimated'."""
    if mode not in ("calculated", "estimated"):
        raise ValueError(f"unknown eps mode {mode!r}")
    calculated, estimated = EPS_TABLE[algorithm][problem_id]
    if mode == "estimated" and estimated is not None:
        return list(estimated)
    return list(calculated)


def default_config(problem_id: str, algorithm: str, seed: int = 0, eps_mode: str = "estimated",
                   **overrides) -> AlgorithmConfig:
    """Full per-cell configuration from the shipped defaults."""
    problem_id = problem_id.lower()
    if problem_id not in ETA_TABLE:
        raise ValueError(f"unknown problem id {problem_id!r}")
    eta_x, eta_m = ETA_TABLE[problem_id]
    n = make_problem(problem_id, overrides.get("m")).n
    variation = overrides.pop("variation", None) or VariationConfig(
        eta_xover=overrides.pop("eta_xover", eta_x),
        eta_mut=overrides.pop("eta_mut", eta_m),
        p_xover=overrides.pop("p_xover", 1.0),
        p_mut=overrides.pop("p_mut", 1.0 / n),
    )
    overrides.pop("m", None)
    alg = AlgorithmConfig(algorithm=algorithm, seed=seed, variation=variation, **overrides)
    if alg.algorithm in STEADY_STATE and alg.eps is None:
        alg = replace(alg, eps=default_epsilon(problem_id, alg.algorithm, eps_mode))
    return alg


@dataclass(frozen=True)
class CellConfig:
    problem: str
    algorithm: str
    overrides: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig:
    cells: tuple[CellConfig, ...]
    runs: int = 1
    base_seed: int = 0
    out_dir: str = "results"
    workers: int = 1
    metrics: tuple[str, ...] = ("gamma", "delta", "hv", "cs")
    eps_mode: str = "estimated"
    front_count: int = 5000
    front_paths: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.cells:
            raise ValueError("experiment has no cells")


@dataclass
class RunRecord:
    problem: str
    algorithm: str
    run: int
    seed: int
    cardinality: int | None
    gamma: float | None
    delta: float | None
    hv: float | None
    cs: float | None
    wall_ms: float | None
    front_path: str | None = None
    error: str | None = None


_CELL_KEYS = {
    "budget", "pop_size", "archive_size", "kappa", "epsilon", "eta_xover",
    "eta_mut", "p_xover", "p_mut", "objectives", "eps_mode",
}
_CAMPAIGN_KEYS = {"runs", "base_seed", "workers", "eps_mode", "front_count", "metrics", "out_dir"}


def parse_config(path) -> ExperimentConfig:
    """Read the sectioned key/value campaign file (unknown keys error)."""
    parser = ConfigParser()
    parser.optionxform = str
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(path)
    campaign: dict = {}
    fronts: dict = {}
    cells: list[CellConfig] = []
    for section in parser.sections():
        items = dict(parser.items(section))
        if section == "campaign":
            for key, value in items.items():
                if key not in _CAMPAIGN_KEYS:
                    raise ValueError(f"[campaign]: unknown key {key!r}")
                if key in ("runs", "base_seed", "workers", "front_count"):
                    campaign[key] = int(value)
                elif key == "metrics":
                    campaign[key] = tuple(value.replace(",", " ").split())
                else:
                    campaign[key] = value
        elif section == "fronts":
            for key, value in items.items():
                if key.lower() not in PROBLEM_IDS:
                    raise ValueError(f"[fronts]: unknown problem {key!r}")
                fronts[key.lower()] = value
        elif section.startswith("cell:"):
            spec = section[len("cell:") :]
            if "/" not in spec:
                raise ValueError(f"[{section}]: expected cell:<problem>/<algorithm>")
            problem, algorithm = spec.split("/", 1)
            overrides: dict = {}
            for key, value in items.items():
                if key not in _CELL_KEYS:
                    raise ValueError(f"[{section}]: unknown key {key!r}")
                if key in ("budget", "pop_size", "archive_size", "objectives"):
                    overrides[key] = int(value)
                elif key in ("kappa", "eta_xover", "eta_mut", "p_xover", "p_mut"):
                    overrides[key] = float(value)
                elif key == "epsilon":
                    overrides[key] = [float(tok) for tok in value.replace(",", " ").split()]
                else:
                    overrides[key] = value
            cells.append(CellConfig(problem.lower(), algorithm, overrides))
        else:
            raise ValueError(f"unknown section [{section}]")
    if not cells:
        raise ValueError(f"{path}: no [cell:...] sections")
    return ExperimentConfig(cells=tuple(cells), front_paths=fronts, **campaign)


def _cell_algorithm_config(cell: CellConfig, seed: int, eps_mode: str) -> tuple[AlgorithmConfig, int | None]:
    over = dict(cell.overrides)
    mode = over.pop("eps_mode", eps_mode)
    m = over.pop("objectives", None)
    if "epsilon" in over:
        over["eps"] = over.pop("epsilon")
    cfg = default_config(cell.problem, cell.algorithm, seed=seed, eps_mode=mode, m=m, **over)
    return cfg, m


def _execute_run(problem_id: str, m: int | None, cfg: AlgorithmConfig):
    problem = make_problem(problem_id, m)
    result = run(problem, cfg)
    feasible = [s for s in result.final_front if s.feasible]
    front = np.asarray([s.f for s in feasible], dtype=np.float64).reshape(len(feasible), problem.m)
    return front, result.evaluations_used, result.wall_time


def _front_file(out_dir: Path, rec: RunRecord) -> Path:
    return out_dir / "fronts" / f"{rec.problem}_{rec.algorithm}_run{rec.run:03d}.front"


def write_front(path: Path, front: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        for row in front:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def run_experiment(config: ExperimentConfig) -> list[RunRecord]:
    """Execute every (problem, algorithm, run) cell and persist results."""
    jobs = []
    refs: dict[tuple, ReferenceFront] = {}
    for cell in config.cells:
        base_cfg, m = _cell_algorithm_config(cell, config.base_seed, config.eps_mode)
        for r in range(config.runs):
            jobs.append((cell, r, replace(base_cfg, seed=config.base_seed + r), m))
        key = (cell.problem, m)
        if key not in refs:
            problem = make_problem(cell.problem, m)
            if cell.problem in config.front_paths:
                refs[key] = load_reference_front(config.front_paths[cell.problem])
            else:
                refs[key] = reference_front(problem, config.front_count)

    out_dir = Path(config.out_dir)
    records: list[RunRecord] = []
    fronts: dict[tuple, np.ndarray] = {}

    def finish(job, outcome, error=None):
        cell, r, cfg, m = job
        rec = RunRecord(cell.problem, cfg.algorithm, r, cfg.seed, None, None, None, None, None, None)
        if error is not None:
            rec.error = error
            warnings.warn(f"run failed for {cell.problem}/{cfg.algorithm} run {r}: {error}")
            records.append(rec)
            return
        front, _evals, wall = outcome
        rec.cardinality = front.shape[0]
        rec.wall_ms = wall * 1000.0
        ref = refs[(cell.problem, m)]
        if front.shape[0]:
            if "gamma" in config.metrics:
                rec.gamma = convergence_gamma(front, ref.points)
            if "delta" in config.metrics and front.shape[0] >= 2:
                rec.delta = diversity_delta(front, ref.points)
            if "hv" in config.metrics and cell.problem not in HV_SUPPRESSED:
                ref_point = reference_point(ref.points, REFERENCE_MARGIN)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    rec.hv = hypervolume(front, ref_point)
        path = _front_file(out_dir, rec)
        write_front(path, front)
        rec.front_path = str(path)
        fronts[(cell.problem, cfg.algorithm, r)] = front
        records.append(rec)

    if config.workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {pool.submit(_execute_run, job[0].problem, job[3], job[2]): job for job in jobs}
            done = {}
            for fut in concurrent.futures.as_completed(futures):
                job = futures[fut]
                try:
                    done[id(job)] = (job, fut.result(), None)
                except Exception as exc:  # noqa: BLE001 - campaign continues
                    done[id(job)] = (job, None, f"{type(exc).__name__}: {exc}")
            for job in jobs:
                entry = done[id(job)]
                finish(entry[0], entry[1], entry[2])
    else:
        for job in jobs:
            try:
                outcome = _execute_run(job[0].problem, job[3], job[2])
            except Exception as exc:  # noqa: BLE001
                finish(job, None, f"{type(exc).__name__}: {exc}")
            else:
                finish(job, outcome)

    if "cs" in config.metrics:
        _attach_coverage(records, fronts, config)
    write_records(records, out_dir / "results.csv")
    return records


def _attach_coverage(records, fronts, config) -> None:
    by_cell = {}
    for rec in records:
        by_cell.setdefault((rec.problem, rec.run), []).append(rec)
    for (_problem, _r), recs in by_cell.items():
        group = [rec for rec in recs if (rec.problem, rec.algorithm, rec.run) in fronts
                 and fronts[(rec.problem, rec.algorithm, rec.run)].shape[0] > 0]
        if len(group) < 2:
            continue
        values = coverage_many_sets([fronts[(r.problem, r.algorithm, r.run)] for r in group])
        for rec, cs in zip(group, values):
            rec.cs = cs


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records(records, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, col)) for col in CSV_COLUMNS])


def read_records(path) -> list[RunRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(
                RunRecord(
                    problem=row["problem"],
                    algorithm=row["algorithm"],
                    run=int(row["run"]),
                    seed=int(row["seed"]),
                    cardinality=int(row["cardinality"]) if row["cardinality"] else None,
                    gamma=float(row["gamma"]) if row["gamma"] else None,
                    delta=float(row["delta"]) if row["delta"] else None,
                    hv=float(row["hv"]) if row["hv"] else None,
                    cs=float(row["cs"]) if row["cs"] else None,
                    wall_ms=float(row["wall_ms"]) if row["wall_ms"] else None,
                )
            )
    return out


def remove_block_effects(records, metric: str) -> np.ndarray:
    """Subtract per-problem (block) mean offsets from a metric.

    Returns values aligned with ``records`` (NaN where the metric is
    missing). Preserves the grand mean and within-block contrasts; with
    a single block this is the identity (with a warning).
    """
    values = np.array(
        [getattr(r, metric) if getattr(r, metric) is not None else np.nan for r in records]
    )
    blocks = [r.problem for r in records]
    labels = sorted(set(blocks))
    if len(labels) < 2:
        warnings.warn("single block: block-effect removal is the identity")
        return values
    grand = np.nanmean(values)
    adjusted = values.copy()
    arr = np.array(blocks)
    for label in labels:
        sel = arr == label
        mean = np.nanmean(values[sel]) if np.any(sel & ~np.isnan(values)) else np.nan
        adjusted[sel] = values[sel] - (mean - grand)
    return adjusted


def mean_ranks(values, ascending: bool) -> np.ndarray:
    """Positional ranks (1 = best) with tied groups sharing their mean."""
    v = np.asarray(values, dtype=np.float64)
    key = v if ascending else -v
    order = np.argsort(key, kind="stable")
    ranks = np.empty(v.shape[0])
    sorted_key = key[order]
    i = 0
    while i < v.shape[0]:
        j = i
        while j + 1 < v.shape[0] and sorted_key[j + 1] == sorted_key[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * ((i + 1) + (j + 1))
        i = j + 1
    return ranks


def rank_table(means_by_algorithm: dict) -> list[dict]:
    """Per-metric mean ranks, their average, and the final ordering.

    ``means_by_algorithm`` maps algorithm -> {metric: mean value}.
    Lower is better for gamma/delta, higher for hv/cs; ties share mean
    positional ranks, so each metric's ranks always sum to the same
    total. The final rank orders the per-algorithm average rank.
    """
    algorithms = list(means_by_algorithm)
    if len(algorithms) < 2:
        raise ValueError("ranking needs at least two algorithms")
    metrics = [m for m in ("gamma", "delta", "hv", "cs") if m in means_by_algorithm[algorithms[0]]]
    per_metric = {}
    for metric in metrics:
        vals = [means_by_algorithm[a][metric] for a in algorithms]
        per_metric[metric] = mean_ranks(vals, ascending=metric in ASCENDING_METRICS)
    avg = np.mean([per_metric[m] for m in metrics], axis=0)
    final = mean_ranks(avg, ascending=True)
    rows = []
    for idx, alg in enumerate(algorithms):
        row = {"algorithm": alg}
        for metric in metrics:
            row[f"rank_{metric}"] = float(per_metric[metric][idx])
        row["avg_rank"] = float(avg[idx])
        row["final_rank"] = float(final[idx])
        rows.append(row)
    rows.sort(key=lambda r: r["final_rank"])
    return rows


def summarize(records) -> list[dict]:
    """Per (problem, algorithm, metric): mean, standard error, median."""
    cells: dict[tuple, dict[str, list[float]]] = {}
    for rec in records:
        cell = cells.setdefault((rec.problem, rec.algorithm), {})
        for metric in ("gamma", "delta", "hv", "cs", "cardinality"):
            value = getattr(rec, metric)
            if value is not None:
                cell.setdefault(metric, []).append(float(value))
    rows = []
    for (problem, algorithm), metrics in sorted(cells.items()):
        for metric, values in metrics.items():
            arr = np.asarray(values)
            se = float(arr.std(ddof=1) / math.sqrt(arr.shape[0])) if arr.shape[0] > 1 else 0.0
            rows.append(
                {
                    "problem": problem,
                    "algorithm": algorithm,
                    "metric": metric,
                    "runs": arr.shape[0],
                    "mean": float(arr.mean()),
                    "se": se,
                    "median": float(np.median(arr)),
                }
            )
    return rows
