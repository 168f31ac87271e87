"""Nondominated sorting and crowding distance."""

from __future__ import annotations

import numpy as np

from ..core import EPS_EQ


def _violations(G: np.ndarray | None, H: np.ndarray | None, n: int) -> np.ndarray:
    v = np.zeros(n)
    if G is not None and G.size:
        v += np.maximum(np.asarray(G, dtype=np.float64), 0.0).sum(axis=1)
    if H is not None and H.size:
        v += np.maximum(np.abs(np.asarray(H, dtype=np.float64)) - EPS_EQ, 0.0).sum(axis=1)
    return v


def _domination_matrix(F: np.ndarray, v: np.ndarray) -> np.ndarray:
    """dom[i, j] = i constrained-dominates j."""
    le = (F[:, None, :] <= F[None, :, :]).all(axis=-1)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=-1)
    pareto = le & lt
    feas_i = (v == 0.0)[:, None]
    feas_j = (v == 0.0)[None, :]
    less_viol = v[:, None] < v[None, :]
    return (
        (feas_i & ~feas_j)
        | (~feas_i & ~feas_j & less_viol)
        | (feas_i & feas_j & pareto)
    )


def fast_nondominated_sort(
    F: np.ndarray, G: np.ndarray | None = None, H: np.ndarray | None = None
) -> np.ndarray:
    """Rank vector: 0 for the nondominated set, r+1 after removing ranks <= r.

    Falls back to constrained domination whenever constraint columns are
    supplied: feasible beats infeasible, infeasibles compare by violation.
    """
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    n = F.shape[0]
    if n == 0:
        return np.zeros(0, dtype=int)
    dom = _domination_matrix(F, _violations(G, H, n))
    counts = dom.sum(axis=0).astype(int)
    ranks = np.full(n, -1, dtype=int)
    r = 0
    current = np.flatnonzero((counts == 0) & (ranks < 0))
    while current.size:
        ranks[current] = r
        counts = counts - dom[current].sum(axis=0)
        r += 1
        current = np.flatnonzero((counts == 0) & (ranks < 0))
    return ranks


def crowding_distance(F: np.ndarray) -> np.ndarray:
    """Per-solution crowding over one rank's objective rows.

    Boundary solutions get +inf; interior ones sum the normalized neighbor
    gap per objective. Objectives with zero range contribute nothing.
    """
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    k, m = F.shape
    if k == 0:
        return np.zeros(0)
    if k <= 2:
        return np.full(k, np.inf)
    d = np.zeros(k)
    for j in range(m):
        order = np.argsort(F[:, j], kind="stable")
        lo, hi = F[order[0], j], F[order[-1], j]
        d[order[0]] = d[order[-1]] = np.inf
        span = hi - lo
        if span == 0.0:
            continue
        gaps = (F[order[2:], j] - F[order[:-2], j]) / span
        d[order[1:-1]] += gaps
    return d


def crowded_compare(rank_a, crowd_a, idx_a, rank_b, crowd_b, idx_b) -> bool:
    """True if a beats b under (rank, crowding, index) tournament order."""
    if rank_a != rank_b:
        return rank_a < rank_b
    if crowd_a != crowd_b:
        return crowd_a > crowd_b
    return idx_a < idx_b
