from .benchmarks import (
    analytical_front,
    evaluate_dtlz1,
    evaluate_dtlz2,
    evaluate_zdt1,
    evaluate_zdt2,
    evaluate_zdt3,
    evaluate_zdt4,
    evaluate_zdt6,
    lattice_size,
    simplex_lattice,
)
from .catalog import builtin_ids, builtin_listing, make_problem
from .dominance import (
    SolutionRecord,
    constrained_dominates,
    dominates,
    nondominated_filter,
)
from .types import EPS_EQ, FrontApproximation, ObjectiveBatch, ProblemInstance

__all__ = [
    "EPS_EQ",
    "FrontApproximation",
    "ObjectiveBatch",
    "ProblemInstance",
    "SolutionRecord",
    "analytical_front",
    "builtin_ids",
    "builtin_listing",
    "constrained_dominates",
    "dominates",
    "evaluate_dtlz1",
    "evaluate_dtlz2",
    "evaluate_zdt1",
    "evaluate_zdt2",
    "evaluate_zdt3",
    "evaluate_zdt4",
    "evaluate_zdt6",
    "lattice_size",
    "make_problem",
    "nondominated_filter",
    "simplex_lattice",
]
