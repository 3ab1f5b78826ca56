"""Cone epsilon-dominance archives and MOEAs with benchmark tooling."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .algorithms import AlgorithmConfig, RunResult, run, run_generational, run_steady_state
from .archive import BoundedArchive, ParetoArchive
from .core import Solution, ideal_point, reference_point
from .dominance import (
    ConeMatrix,
    archive_capacity_bound,
    box_index,
    box_origin_distance,
    build_cone_matrix,
    cone_eps_dominates,
    cone_eps_for_target_size,
    eps_dominates,
    eps_for_target_size,
    pareto_dominates,
)
from .metrics import convergence_gamma, coverage_many_sets, diversity_delta, hypervolume
from .problems import Problem, evaluate, load_reference_front, make_problem, sample_reference_front
from .variation import RngStream, VariationConfig, polynomial_mutation, sbx_crossover, tournament_select

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "AlgorithmConfig",
    "RunResult",
    "run",
    "run_generational",
    "run_steady_state",
    "BoundedArchive",
    "ParetoArchive",
    "Solution",
    "ideal_point",
    "reference_point",
    "ConeMatrix",
    "archive_capacity_bound",
    "box_index",
    "box_origin_distance",
    "build_cone_matrix",
    "cone_eps_dominates",
    "cone_eps_for_target_size",
    "eps_dominates",
    "eps_for_target_size",
    "pareto_dominates",
    "convergence_gamma",
    "coverage_many_sets",
    "diversity_delta",
    "hypervolume",
    "Problem",
    "evaluate",
    "load_reference_front",
    "make_problem",
    "sample_reference_front",
    "RngStream",
    "VariationConfig",
    "polynomial_mutation",
    "sbx_crossover",
    "tournament_select",
    "__version__",
]
