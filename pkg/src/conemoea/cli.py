"""Command-line interface: run campaigns, single runs, metric recompute
and rank tables. All outputs are plot-ready CSV or plain front files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench
from .algorithms import ALGORITHM_IDS, run
from .core import reference_point
from .metrics import convergence_gamma, diversity_delta, hypervolume
from .problems import PROBLEM_IDS, load_reference_front, make_problem, reference_front


def _cmd_run(args) -> int:
    config = bench.parse_config(args.config)
    updates = {}
    if args.out:
        updates["out_dir"] = args.out
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.seed is not None:
        updates["base_seed"] = args.seed
    if updates:
        from dataclasses import replace

        config = replace(config, **updates)
    records = bench.run_experiment(config)
    failed = [r for r in records if r.error]
    print(f"{len(records)} runs -> {Path(config.out_dir) / 'results.csv'}"
          + (f" ({len(failed)} failed)" if failed else ""))
    return 1 if failed else 0


def _cmd_single(args) -> int:
    problem = make_problem(args.problem)
    overrides = {}
    if args.evals is not None:
        overrides["budget"] = args.evals
    if args.pop_size is not None:
        overrides["pop_size"] = args.pop_size
    if args.kappa is not None:
        overrides["kappa"] = args.kappa
    if args.epsilon:
        overrides["eps"] = [float(tok) for tok in args.epsilon.replace(",", " ").split()]
    cfg = bench.default_config(args.problem, args.algorithm, seed=args.seed, **overrides)
    result = run(problem, cfg)
    feasible = [s for s in result.final_front if s.feasible]
    front = np.asarray([s.f for s in feasible]).reshape(len(feasible), problem.m)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{problem.id}_{cfg.algorithm}_seed{cfg.seed}.front"
    bench.write_front(path, front)
    ref = reference_front(problem)
    gamma = convergence_gamma(front, ref.points)
    delta = diversity_delta(front, ref.points) if front.shape[0] >= 2 else float("nan")
    line = (
        f"problem={problem.id} algorithm={cfg.algorithm} seed={cfg.seed} "
        f"evals={result.evaluations_used} |front|={front.shape[0]} "
        f"gamma={gamma:.6g} delta={delta:.6g}"
    )
    if problem.id not in bench.HV_SUPPRESSED:
        hv = hypervolume(front, reference_point(ref.points, bench.REFERENCE_MARGIN))
        line += f" hv={hv:.6g}"
    print(line)
    print(f"front written to {path}")
    return 0


def _cmd_metrics(args) -> int:
    problem = make_problem(args.problem)
    if args.ref:
        ref = load_reference_front(args.ref)
    else:
        ref = reference_front(problem, args.count)
    ref_pt = reference_point(ref.points, bench.REFERENCE_MARGIN)
    print("front,cardinality,gamma,delta,hv")
    for front_path in args.fronts:
        front = load_reference_front(front_path).points
        gamma = convergence_gamma(front, ref.points)
        delta = diversity_delta(front, ref.points) if front.shape[0] >= 2 else ""
        hv = ""
        if problem.id not in bench.HV_SUPPRESSED:
            hv = hypervolume(front, ref_pt)
        print(f"{front_path},{front.shape[0]},{gamma!r},{delta!r},{hv!r}")
    return 0


def _cmd_rank(args) -> int:
    records = bench.read_records(args.results)
    if not records:
        print("no records", file=sys.stderr)
        return 1
    algorithms = sorted({r.algorithm for r in records})
    metrics = [m for m in ("gamma", "delta", "hv", "cs")
               if any(getattr(r, m) is not None for r in records)]
    means = {alg: {} for alg in algorithms}
    for metric in metrics:
        adjusted = bench.remove_block_effects(records, metric)
        for alg in algorithms:
            sel = np.array([r.algorithm == alg for r in records])
            means[alg][metric] = float(np.nanmean(adjusted[sel]))
    rows = bench.rank_table(means)
    header = ["algorithm"] + [f"rank_{m}" for m in metrics] + ["avg_rank", "final_rank"]
    print(",".join(header))
    for row in rows:
        print(",".join(str(row[col]) if col == "algorithm" else f"{row[col]:g}" for col in header))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="conemoea",
        description="Cone epsilon-dominance MOEA benchmark runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a campaign config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--workers", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.set_defaults(fn=_cmd_run)

    p_single = sub.add_parser("single", help="one run of one algorithm on one problem")
    p_single.add_argument("--problem", required=True, choices=PROBLEM_IDS)
    p_single.add_argument("--algorithm", required=True,
                          type=lambda s: s.upper().replace("-", "").replace("*", "STAR"),
                          choices=ALGORITHM_IDS)
    p_single.add_argument("--evals", type=int, default=None)
    p_single.add_argument("--pop-size", type=int, default=None)
    p_single.add_argument("--epsilon", default=None, help="comma/space separated list")
    p_single.add_argument("--kappa", type=float, default=None)
    p_single.add_argument("--seed", type=int, default=0)
    p_single.add_argument("--out", default="results")
    p_single.set_defaults(fn=_cmd_single)

    p_metrics = sub.add_parser("metrics", help="recompute metrics from stored fronts")
    p_metrics.add_argument("--problem", required=True, choices=PROBLEM_IDS)
    p_metrics.add_argument("--ref", default=None, help="reference front file")
    p_metrics.add_argument("--count", type=int, default=5000, help="generated reference density")
    p_metrics.add_argument("fronts", nargs="+", help="front files to score")
    p_metrics.set_defaults(fn=_cmd_metrics)

    p_rank = sub.add_parser("rank", help="emit a rank table from a results CSV")
    p_rank.add_argument("--results", required=True)
    p_rank.set_defaults(fn=_cmd_rank)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
