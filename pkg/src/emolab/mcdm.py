"""A-posteriori compromise selection over stored Pareto approximations.

Both methods score the min-max normalized objective matrix (all objectives
are minimization targets), so selection is invariant to positive scaling of
any objective column. Ties resolve to the lowest row index everywhere, and
every decision is captured in an auditable snapshot.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DecisionError
from .orchestrator import DECISION_SUFFIX, RunPayload, canonical_dumps, iso_now, write_canonical

MCDM_METHODS = ("topsis", "weighted_sum")


def normalize_front(F: np.ndarray) -> np.ndarray:
    """Per-objective min-max scaling to [0, 1]; constant columns map to 0."""
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    if F.shape[0] < 1:
        raise DecisionError("cannot normalize an empty front")
    lo = F.min(axis=0)
    span = F.max(axis=0) - lo
    out = np.zeros_like(F)
    nonzero = span > 0
    out[:, nonzero] = (F[:, nonzero] - lo[nonzero]) / span[nonzero]
    return out


def _prepare_weights(weights, m: int) -> np.ndarray:
    if weights is None:
        return np.full(m, 1.0 / m)
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    if w.shape[0] != m:
        raise ConfigurationError(f"expected {m} weights, got {w.shape[0]}")
    if np.any(w < 0):
        raise ConfigurationError("weights must be non-negative")
    total = w.sum()
    if total == 0:
        raise ConfigurationError("weights must not all be zero")
    return w / total


def weighted_sum_decide(front, weights=None) -> tuple[int, float]:
    """Argmin of the weighted normalized objective sum; ties -> lowest index."""
    F = np.atleast_2d(np.asarray(front, dtype=np.float64))
    if F.shape[0] == 0:
        raise DecisionError("empty front")
    w = _prepare_weights(weights, F.shape[1])
    scores = normalize_front(F) @ w
    index = int(np.argmin(scores))  # argmin takes the first of tied minima
    return index, float(scores[index])


def topsis_decide(front, weights=None) -> tuple[int, float]:
    """Relative closeness to the weighted ideal point; ties -> lowest index.

    On the weighted normalized matrix the ideal row is all zeros and the
    anti-ideal holds the per-column maxima; closeness is d-/(d+ + d-), zero
    when both distances vanish.
    """
    F = np.atleast_2d(np.asarray(front, dtype=np.float64))
    if F.shape[0] == 0:
        raise DecisionError("empty front")
    w = _prepare_weights(weights, F.shape[1])
    V = normalize_front(F) * w
    anti = V.max(axis=0)
    d_plus = np.sqrt((V**2).sum(axis=1))
    d_minus = np.sqrt(((V - anti) ** 2).sum(axis=1))
    denom = d_plus + d_minus
    closeness = np.where(denom > 0, d_minus / np.where(denom > 0, denom, 1.0), 0.0)
    index = int(np.argmax(closeness))
    return index, float(closeness[index])


@dataclass(frozen=True)
class DecisionSnapshot:
    """Auditable record of one MCDM selection."""

    run_id: str
    method: str
    weights: tuple[float, ...]  # normalized, sums to 1
    raw_weights: tuple[float, ...] | None
    selected_index: int
    score: float
    normalized_row: tuple[float, ...]
    selected_values: tuple[float, ...]
    created_at: str
    front_hash: str
    meta: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "method": self.method,
            "weights": list(self.weights),
            "raw_weights": list(self.raw_weights) if self.raw_weights else None,
            "selected_index": self.selected_index,
            "score": self.score,
            "normalized_row": list(self.normalized_row),
            "selected_values": list(self.selected_values),
            "created_at": self.created_at,
            "front_hash": self.front_hash,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionSnapshot":
        return cls(
            run_id=data["run_id"],
            method=data["method"],
            weights=tuple(data["weights"]),
            raw_weights=tuple(data["raw_weights"]) if data.get("raw_weights") else None,
            selected_index=int(data["selected_index"]),
            score=float(data["score"]),
            normalized_row=tuple(data["normalized_row"]),
            selected_values=tuple(data["selected_values"]),
            created_at=data["created_at"],
            front_hash=data["front_hash"],
            meta=dict(data.get("meta", {})),
        )


def front_digest(F: np.ndarray) -> str:
    return hashlib.sha256(canonical_dumps(np.asarray(F)).encode("utf-8")).hexdigest()


def decide(front, method: str, weights=None) -> tuple[int, float]:
    if method == "topsis":
        return topsis_decide(front, weights)
    if method == "weighted_sum":
        return weighted_sum_decide(front, weights)
    raise ConfigurationError(f"unknown MCDM method '{method}'")


def decide_and_snapshot(
    payload: RunPayload,
    method: str,
    weights=None,
    payload_path: str | Path | None = None,
) -> DecisionSnapshot:
    """Apply a rule to the payload's nondominated front and record it.

    When payload_path points at the persisted `<run>.run.json`, the snapshot
    is written next to it as `<run>.decision.json`.
    """
    front = payload.nondominated_front()
    if front.shape[0] == 0:
        raise DecisionError("payload has an empty nondominated front")
    w = _prepare_weights(weights, front.shape[1])
    index, score = decide(front, method, w)
    snapshot = DecisionSnapshot(
        run_id=payload.run_id,
        method=method,
        weights=tuple(float(v) for v in w),
        raw_weights=tuple(float(v) for v in np.asarray(weights).reshape(-1))
        if weights is not None
        else None,
        selected_index=index,
        score=score,
        normalized_row=tuple(float(v) for v in normalize_front(front)[index]),
        selected_values=tuple(float(v) for v in front[index]),
        created_at=iso_now(),
        front_hash=front_digest(front),
        meta={
            "tie_break": "lowest_index",
            "degenerate_closeness": "zero",
            "normalization": "min_max",
        },
    )
    if payload_path is not None:
        write_canonical(snapshot.to_dict(), sidecar_path(payload_path))
    return snapshot


def sidecar_path(payload_path: str | Path) -> Path:
    path = Path(payload_path)
    name = path.name
    if name.endswith(".run.json"):
        name = name[: -len(".run.json")]
    else:
        name = path.stem
    return path.with_name(name + DECISION_SUFFIX)
