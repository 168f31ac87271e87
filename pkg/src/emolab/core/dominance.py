"""Pareto dominance relations and nondominated filtering.

Minimization convention throughout. Constraint handling is feasibility-first
constraint-domination: any feasible solution beats any infeasible one, two
infeasible solutions are compared by total violation, two feasible ones by
plain dominance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation
from .types import EPS_EQ, FrontApproximation, ObjectiveBatch


def dominates(a, b) -> bool:
    """True iff a[i] <= b[i] for all i and a[j] < b[j] for some j."""
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise ContractViolation(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    return bool(np.all(a <= b) and np.any(a < b))


@dataclass(frozen=True)
class SolutionRecord:
    """One evaluated solution: objectives plus raw constraint values."""

    f: np.ndarray
    g: np.ndarray = None
    h: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "f", np.asarray(self.f, dtype=np.float64).reshape(-1))
        g = np.zeros(0) if self.g is None else np.asarray(self.g, dtype=np.float64).reshape(-1)
        h = np.zeros(0) if self.h is None else np.asarray(self.h, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "h", h)

    @classmethod
    def from_batch(cls, batch: ObjectiveBatch, i: int) -> "SolutionRecord":
        return cls(batch.F[i], batch.G[i], batch.H[i])

    @property
    def violation(self) -> float:
        v = np.maximum(self.g, 0.0).sum()
        v += np.maximum(np.abs(self.h) - EPS_EQ, 0.0).sum()
        return float(v)


def constrained_dominates(a: SolutionRecord, b: SolutionRecord) -> bool:
    """Feasibility-first domination between two evaluated solutions."""
    va, vb = a.violation, b.violation
    if va == 0.0 and vb > 0.0:
        return True
    if va > 0.0 and vb > 0.0:
        return va < vb
    if va > 0.0:
        return False
    return dominates(a.f, b.f)


def nondominated_filter(front) -> list[int]:
    """Indices of rows not dominated by any other row, ascending.

    Accepts a FrontApproximation or a raw (N, M) matrix. Duplicate rows are
    all retained: identical vectors never dominate each other.
    """
    F = front.F if isinstance(front, FrontApproximation) else front
    F = np.asarray(F, dtype=np.float64)
    if F.size == 0:
        return []
    F = np.atleast_2d(F)
    # dom[i, j] = row i dominates row j
    le = (F[:, None, :] <= F[None, :, :]).all(axis=-1)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=-1)
    dominated = (le & lt).any(axis=0)
    return [int(i) for i in np.flatnonzero(~dominated)]
