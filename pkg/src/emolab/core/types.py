"""Problem model value objects.

All types are immutable after construction and safe to share across
concurrent workers. Evaluators must be pure: the same input matrix always
yields bit-identical output.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..errors import ContractViolation

# |h(x)| <= EPS_EQ counts as satisfying an equality constraint.
EPS_EQ = 1e-4


@dataclass(frozen=True, eq=False)
class ObjectiveBatch:
    """Evaluator output for a batch of N candidates.

    F: (N, M) objective values.
    G: (N, n_ieq) inequality constraint values, feasible iff <= 0.
    H: (N, n_eq) equality constraint values, feasible iff |h| <= EPS_EQ.
    """

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.F, dtype=np.float64)
        g = np.asarray(self.G, dtype=np.float64).reshape(f.shape[0], -1)
        h = np.asarray(self.H, dtype=np.float64).reshape(f.shape[0], -1)
        object.__setattr__(self, "F", f)
        object.__setattr__(self, "G", g)
        object.__setattr__(self, "H", h)
        if f.ndim != 2:
            raise ContractViolation(f"F must be 2-D, got shape {f.shape}")

    @property
    def n_rows(self) -> int:
        return self.F.shape[0]

    def violations(self) -> np.ndarray:
        """Total constraint violation per row; 0 for feasible rows."""
        v = np.zeros(self.n_rows)
        if self.G.shape[1]:
            v += np.maximum(self.G, 0.0).sum(axis=1)
        if self.H.shape[1]:
            v += np.maximum(np.abs(self.H) - EPS_EQ, 0.0).sum(axis=1)
        return v


def empty_constraints(n_rows: int) -> np.ndarray:
    return np.zeros((n_rows, 0))


@dataclass(frozen=True, eq=False)
class FrontApproximation:
    """A set of objective vectors, optionally paired with decision vectors."""

    F: np.ndarray
    X: np.ndarray | None = None
    problem_id: str = ""
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        f = np.atleast_2d(np.asarray(self.F, dtype=np.float64))
        object.__setattr__(self, "F", f)
        if self.X is not None:
            x = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
            if x.shape[0] != f.shape[0]:
                raise ContractViolation(
                    f"X has {x.shape[0]} rows but F has {f.shape[0]}"
                )
            object.__setattr__(self, "X", x)

    @property
    def n_points(self) -> int:
        return self.F.shape[0]


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """A fully specified optimization problem with a batch evaluator.

    The evaluator maps an (N, n_var) matrix to an ObjectiveBatch with N rows,
    n_obj objective columns and n_ieq/n_eq constraint columns. It must be
    pure and reentrant.
    """

    id: str
    name: str
    n_var: int
    n_obj: int
    n_ieq: int
    n_eq: int
    lower: np.ndarray
    upper: np.ndarray
    evaluator: Callable[[np.ndarray], ObjectiveBatch]
    reference_front: FrontApproximation | None = None
    tags: frozenset[str] = frozenset()

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=np.float64).reshape(-1)
        up = np.asarray(self.upper, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "tags", frozenset(self.tags))
        if self.n_var < 1 or self.n_obj < 1:
            raise ContractViolation("n_var and n_obj must be positive")
        if lo.shape != (self.n_var,) or up.shape != (self.n_var,):
            raise ContractViolation("bound vectors must have length n_var")
        if not np.all(lo < up):
            raise ContractViolation("lower[i] < upper[i] must hold for all i")

    def evaluate(self, X: np.ndarray) -> ObjectiveBatch:
        """Evaluate a batch, enforcing the input and output contracts."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.n_var:
            raise ContractViolation(
                f"expected {self.n_var} columns, got {X.shape[1]}"
            )
        bad = np.where((X < self.lower) | (X > self.upper))
        if bad[0].size:
            raise ContractViolation(
                f"row {int(bad[0][0])} outside bounds in variable {int(bad[1][0])}"
            )
        batch = self.evaluator(X)
        if batch.F.shape != (X.shape[0], self.n_obj):
            raise ContractViolation(
                f"evaluator returned F of shape {batch.F.shape}, "
                f"expected {(X.shape[0], self.n_obj)}"
            )
        if batch.G.shape[1] != self.n_ieq or batch.H.shape[1] != self.n_eq:
            raise ContractViolation(
                "evaluator returned wrong constraint column counts"
            )
        return batch

    @property
    def has_constraints(self) -> bool:
        return self.n_ieq > 0 or self.n_eq > 0
