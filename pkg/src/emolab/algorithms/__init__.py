from ..core import ProblemInstance
from ..errors import ConfigurationError
from .config import (
    ALGORITHM_IDS,
    AlgorithmConfig,
    algorithm_listing,
    default_config,
    moead_lattice_size,
    moead_partitions,
)
from .moead import das_dennis_weights, moead_geometry, moead_init, moead_step, tchebycheff
from .nsga2 import Population, RunState, nsga2_init, nsga2_step, random_population
from .operators import polynomial_mutation, sbx_crossover
from .sorting import crowded_compare, crowding_distance, fast_nondominated_sort

import numpy as np


def init_state(
    problem: ProblemInstance,
    config: AlgorithmConfig,
    rng: np.random.Generator,
    fe_budget: int,
) -> RunState:
    """Initialize a run for the configured algorithm (config must be resolved)."""
    if config.algorithm_id == "nsga2":
        return nsga2_init(problem, config, rng, fe_budget)
    if config.algorithm_id == "moead":
        return moead_init(problem, config, rng, fe_budget)
    raise ConfigurationError(f"unknown algorithm '{config.algorithm_id}'")


def step_state(
    state: RunState,
    config: AlgorithmConfig,
    problem: ProblemInstance,
    rng: np.random.Generator,
) -> RunState:
    """Advance one generation for the configured algorithm."""
    if config.algorithm_id == "nsga2":
        return nsga2_step(state, config, problem, rng)
    if config.algorithm_id == "moead":
        return moead_step(state, config, problem, rng)
    raise ConfigurationError(f"unknown algorithm '{config.algorithm_id}'")


__all__ = [
    "ALGORITHM_IDS",
    "AlgorithmConfig",
    "Population",
    "RunState",
    "algorithm_listing",
    "crowded_compare",
    "crowding_distance",
    "das_dennis_weights",
    "default_config",
    "fast_nondominated_sort",
    "init_state",
    "moead_geometry",
    "moead_init",
    "moead_lattice_size",
    "moead_partitions",
    "moead_step",
    "nsga2_init",
    "nsga2_step",
    "polynomial_mutation",
    "random_population",
    "sbx_crossover",
    "step_state",
    "tchebycheff",
]
