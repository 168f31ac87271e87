"""MOEA/D with Tchebycheff scalarization over a simplex-lattice weight set.

Each pass visits subproblems in index order, producing one child per
subproblem; the FE budget can therefore be hit mid-generation, at a
subproblem boundary. Replacement updates at most n_r pool members per
child. Constrained problems compare (violation, scalarized value)
lexicographically so feasibility always wins.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from ..core import ObjectiveBatch, ProblemInstance, simplex_lattice
from .config import AlgorithmConfig, moead_partitions
from .nsga2 import Population, RunState, random_population
from .operators import polynomial_mutation, sbx_crossover

_LAMBDA_FLOOR = 1e-6


def das_dennis_weights(n_obj: int, partitions: int) -> np.ndarray:
    """All simplex-lattice weight vectors i/partitions, lexicographic order."""
    return simplex_lattice(n_obj, partitions)


def tchebycheff(f, lam, z_star) -> float:
    """max_i lam_i |f_i - z_i*|, with zero weights floored at 1e-6."""
    f = np.asarray(f, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    z = np.asarray(z_star, dtype=np.float64)
    lam = np.where(lam == 0.0, _LAMBDA_FLOOR, lam)
    return float(np.max(lam * np.abs(f - z)))


def _tchebycheff_rows(F: np.ndarray, lam: np.ndarray, z: np.ndarray) -> np.ndarray:
    lam = np.where(lam == 0.0, _LAMBDA_FLOOR, lam)
    return (lam * np.abs(F - z)).max(axis=-1)


_GEOMETRY_CACHE: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray]] = {}


def moead_geometry(
    problem: ProblemInstance, config: AlgorithmConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Weight matrix (W, M) and neighbor index table (W, T).

    Neighbors are the T nearest weight vectors by Euclidean distance,
    self included; ties resolve to the lower index. Results are cached;
    both arrays are treated as read-only.
    """
    key = (problem.n_obj, config.pop_size, config.moead_neighborhood)
    cached = _GEOMETRY_CACHE.get(key)
    if cached is not None:
        return cached
    partitions = moead_partitions(problem.n_obj, config.pop_size)
    weights = das_dennis_weights(problem.n_obj, partitions)
    w = weights.shape[0]
    t = min(config.moead_neighborhood, w)
    dist = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=-1)
    neighbors = np.argsort(dist, axis=1, kind="stable")[:, :t]
    weights.setflags(write=False)
    neighbors.setflags(write=False)
    _GEOMETRY_CACHE[key] = (weights, neighbors)
    return weights, neighbors


def moead_init(
    problem: ProblemInstance,
    config: AlgorithmConfig,
    rng: np.random.Generator,
    fe_budget: int,
) -> RunState:
    weights, _ = moead_geometry(problem, config)
    w = weights.shape[0]
    X = random_population(problem, w, rng)
    batch = problem.evaluate(X)
    return RunState(
        generation=0,
        fe_used=w,
        fe_budget=fe_budget,
        population=Population(X=X, batch=batch),
        ideal_point=batch.F.min(axis=0),
    )


def moead_step(
    state: RunState,
    config: AlgorithmConfig,
    problem: ProblemInstance,
    rng: np.random.Generator,
) -> RunState:
    """One pass over all subproblems (or fewer if the budget runs out)."""
    if state.finished or state.fe_used >= state.fe_budget:
        return dataclasses.replace(state, finished=True)

    weights, neighbors = moead_geometry(problem, config)
    w = weights.shape[0]
    pop = state.population
    X = pop.X.copy()
    F = pop.batch.F.copy()
    G = pop.batch.G.copy()
    H = pop.batch.H.copy()
    viol = pop.batch.violations().copy()
    z = state.ideal_point.copy()
    fe_used = state.fe_used
    finished = False

    for i in range(w):
        if fe_used >= state.fe_budget:
            finished = True
            break
        pool = neighbors[i] if rng.random() < config.moead_delta else np.arange(w)
        # distinct parent pair without a full permutation
        a = int(rng.integers(pool.size))
        b = int(rng.integers(pool.size - 1))
        if b >= a:
            b += 1
        a, b = int(pool[a]), int(pool[b])
        c1, _ = sbx_crossover(
            X[a], X[b], config.crossover_eta, config.crossover_prob,
            rng, problem.lower, problem.upper,
        )
        child = polynomial_mutation(
            c1, config.mutation_eta, config.mutation_prob,
            rng, problem.lower, problem.upper,
        )
        child_batch = problem.evaluate(child[None, :])
        fe_used += 1
        f_child = child_batch.F[0]
        v_child = float(child_batch.violations()[0])
        z = np.minimum(z, f_child)

        # comparisons within one child's scan are independent, so they can
        # be evaluated in bulk before applying the first n_r improvements
        order = rng.permutation(pool)
        lam = weights[order]
        g_child = _tchebycheff_rows(f_child[None, :], lam, z)
        g_incumbent = _tchebycheff_rows(F[order], lam, z)
        better = (v_child < viol[order]) | (
            (v_child == viol[order]) & (g_child < g_incumbent)
        )
        for j in order[better][: config.moead_max_replacements]:
            j = int(j)
            X[j] = child
            F[j] = f_child
            G[j] = child_batch.G[0]
            H[j] = child_batch.H[0]
            viol[j] = v_child

    if fe_used >= state.fe_budget:
        finished = True
    new_batch = ObjectiveBatch(F=F, G=G, H=H)
    return RunState(
        generation=state.generation + 1,
        fe_used=fe_used,
        fe_budget=state.fe_budget,
        population=Population(X=X, batch=new_batch),
        ideal_point=z,
        finished=finished,
    )
