"""NSGA-II generation loop.

State transitions are pure functions of (state, config, problem, rng); a
seeded generator fully determines every population. The final generation
evaluates only as many offspring as the FE budget still allows, so fe_used
never exceeds the budget and ends exactly on it.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from ..core import ObjectiveBatch, ProblemInstance
from .config import AlgorithmConfig
from .operators import polynomial_mutation, sbx_crossover
from .sorting import crowded_compare, crowding_distance, fast_nondominated_sort


@dataclass(frozen=True, eq=False)
class Population:
    X: np.ndarray
    batch: ObjectiveBatch
    rank: np.ndarray | None = None
    crowding: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True, eq=False)
class RunState:
    generation: int
    fe_used: int
    fe_budget: int
    population: Population
    ideal_point: np.ndarray | None = None  # moead only
    finished: bool = False


def random_population(
    problem: ProblemInstance, n: int, rng: np.random.Generator
) -> np.ndarray:
    span = problem.upper - problem.lower
    return problem.lower + rng.random((n, problem.n_var)) * span


def _ranked(problem: ProblemInstance, X: np.ndarray, batch: ObjectiveBatch) -> Population:
    g = batch.G if problem.n_ieq else None
    h = batch.H if problem.n_eq else None
    rank = fast_nondominated_sort(batch.F, g, h)
    crowd = np.zeros(X.shape[0])
    for r in np.unique(rank):
        members = np.flatnonzero(rank == r)
        crowd[members] = crowding_distance(batch.F[members])
    return Population(X=X, batch=batch, rank=rank, crowding=crowd)


def nsga2_init(
    problem: ProblemInstance,
    config: AlgorithmConfig,
    rng: np.random.Generator,
    fe_budget: int,
) -> RunState:
    X = random_population(problem, config.pop_size, rng)
    batch = problem.evaluate(X)
    return RunState(
        generation=0,
        fe_used=config.pop_size,
        fe_budget=fe_budget,
        population=_ranked(problem, X, batch),
    )


def _tournament(pop: Population, rng: np.random.Generator) -> int:
    a, b = rng.integers(0, pop.size, size=2)
    a, b = int(a), int(b)
    if crowded_compare(pop.rank[a], pop.crowding[a], a, pop.rank[b], pop.crowding[b], b):
        return a
    return b


def _concat_batches(a: ObjectiveBatch, b: ObjectiveBatch) -> ObjectiveBatch:
    return ObjectiveBatch(
        F=np.vstack([a.F, b.F]),
        G=np.vstack([a.G, b.G]),
        H=np.vstack([a.H, b.H]),
    )


def _select_survivors(rank: np.ndarray, F: np.ndarray, n: int) -> np.ndarray:
    chosen: list[int] = []
    for r in range(int(rank.max()) + 1):
        members = np.flatnonzero(rank == r)
        if len(chosen) + members.size <= n:
            chosen.extend(int(i) for i in members)
            if len(chosen) == n:
                break
        else:
            crowd = crowding_distance(F[members])
            # descending crowding, ties to the lower union index
            order = sorted(range(members.size), key=lambda k: (-crowd[k], members[k]))
            need = n - len(chosen)
            chosen.extend(int(members[k]) for k in order[:need])
            break
    return np.asarray(chosen, dtype=int)


def nsga2_step(
    state: RunState,
    config: AlgorithmConfig,
    problem: ProblemInstance,
    rng: np.random.Generator,
) -> RunState:
    """One generation: tournament -> SBX -> mutation -> elitist selection."""
    if state.finished or state.fe_used >= state.fe_budget:
        return dataclasses.replace(state, finished=True)

    pop = state.population
    n = config.pop_size
    n_off = min(n, state.fe_budget - state.fe_used)
    rows: list[np.ndarray] = []
    while len(rows) < n_off:
        a = _tournament(pop, rng)
        b = _tournament(pop, rng)
        c1, c2 = sbx_crossover(
            pop.X[a], pop.X[b], config.crossover_eta, config.crossover_prob,
            rng, problem.lower, problem.upper,
        )
        for child in (c1, c2):
            rows.append(
                polynomial_mutation(
                    child, config.mutation_eta, config.mutation_prob,
                    rng, problem.lower, problem.upper,
                )
            )
    offspring_X = np.asarray(rows[:n_off])
    offspring_batch = problem.evaluate(offspring_X)

    union_X = np.vstack([pop.X, offspring_X])
    union_batch = _concat_batches(pop.batch, offspring_batch)
    g = union_batch.G if problem.n_ieq else None
    h = union_batch.H if problem.n_eq else None
    union_rank = fast_nondominated_sort(union_batch.F, g, h)
    survivors = _select_survivors(union_rank, union_batch.F, n)

    new_batch = ObjectiveBatch(
        F=union_batch.F[survivors],
        G=union_batch.G[survivors],
        H=union_batch.H[survivors],
    )
    new_pop = _ranked(problem, union_X[survivors], new_batch)
    fe_used = state.fe_used + n_off
    return RunState(
        generation=state.generation + 1,
        fe_used=fe_used,
        fe_budget=state.fe_budget,
        population=new_pop,
        finished=fe_used >= state.fe_budget,
    )
