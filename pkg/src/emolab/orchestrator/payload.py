"""Run payloads: the persisted reproducibility unit, plus progress events."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ..core import nondominated_filter
from ..errors import PayloadLoadError
from ..indicators import MetricHistory
from .store import as_float, read_canonical, write_canonical

SCHEMA_VERSION = 1

PAYLOAD_SUFFIX = ".run.json"
MANIFEST_SUFFIX = ".exp.json"
DECISION_SUFFIX = ".decision.json"

EVENT_KINDS = ("started", "generation", "metric_point", "finished", "failed")


def iso_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


@dataclass(frozen=True)
class ProgressEvent:
    run_id: str
    kind: str
    fe_used: int
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "kind": self.kind,
            "fe_used": self.fe_used,
            "payload": self.payload,
        }

    @property
    def terminal(self) -> bool:
        return self.kind in ("finished", "failed")


@dataclass(eq=False)
class RunPayload:
    """Everything needed to audit and exactly replay one optimization run."""

    schema_version: int
    run_id: str
    problem: dict  # {"id", "n_obj", "n_var", "overrides"}
    algorithm: dict  # {"id", "config"}
    seed: int
    backend: str
    fe_budget: int
    metric_histories: list[MetricHistory]
    final_X: np.ndarray
    final_F: np.ndarray
    final_G: np.ndarray
    final_H: np.ndarray
    nondominated_indices: list[int]
    wall_time_ms: int
    log: list[str]
    meta: dict[str, str]

    def nondominated_front(self) -> np.ndarray:
        return self.final_F[self.nondominated_indices]

    def history_for(self, metric_id: str) -> MetricHistory | None:
        for h in self.metric_histories:
            if h.metric_id == metric_id:
                return h
        return None

    def to_dict(self) -> dict:
        def matrix(a: np.ndarray):
            return [] if a.size == 0 and a.shape[1] == 0 else a.tolist()

        return {
            "schema_version": self.schema_version,
            "run_id": self.run_id,
            "problem": self.problem,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "backend": self.backend,
            "fe_budget": self.fe_budget,
            "metric_histories": [
                {"metric_id": h.metric_id, "points": [[fe, v] for fe, v in h.points]}
                for h in self.metric_histories
            ],
            "final_X": self.final_X.tolist(),
            "final_F": self.final_F.tolist(),
            "final_G": matrix(self.final_G),
            "final_H": matrix(self.final_H),
            "nondominated_indices": list(self.nondominated_indices),
            "wall_time_ms": self.wall_time_ms,
            "log": list(self.log),
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunPayload":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise PayloadLoadError(
                "schema_version", f"unknown version {version!r} (expected {SCHEMA_VERSION})"
            )
        for key in (
            "run_id", "problem", "algorithm", "seed", "backend", "fe_budget",
            "metric_histories", "final_X", "final_F", "nondominated_indices",
        ):
            if key not in data:
                raise PayloadLoadError(key, "missing required field")

        def matrix(key: str, n_rows: int | None = None) -> np.ndarray:
            raw = data.get(key, [])
            if raw == [] and n_rows is not None:
                return np.zeros((n_rows, 0))
            try:
                arr = np.asarray(raw, dtype=np.float64)
            except (TypeError, ValueError) as exc:
                raise PayloadLoadError(key, f"not a numeric matrix: {exc}") from exc
            if arr.ndim == 1:
                arr = arr.reshape(0, 0) if arr.size == 0 else arr.reshape(1, -1)
            return arr

        final_f = matrix("final_F")
        n = final_f.shape[0]
        final_x = matrix("final_X")
        if final_x.shape[0] != n:
            raise PayloadLoadError("final_X", "row count differs from final_F")

        histories = []
        for raw in data["metric_histories"]:
            h = MetricHistory(raw["metric_id"])
            last_fe = None
            for fe, value in raw["points"]:
                fe = int(fe)
                if last_fe is not None and fe <= last_fe:
                    raise PayloadLoadError(
                        "metric_histories", f"fe not strictly increasing in {h.metric_id}"
                    )
                h.points.append((fe, as_float(value)))
                last_fe = fe
            histories.append(h)

        indices = [int(i) for i in data["nondominated_indices"]]
        if indices != nondominated_filter(final_f):
            raise PayloadLoadError(
                "nondominated_indices", "does not match the nondominated filter of final_F"
            )

        return cls(
            schema_version=SCHEMA_VERSION,
            run_id=str(data["run_id"]),
            problem=dict(data["problem"]),
            algorithm=dict(data["algorithm"]),
            seed=int(data["seed"]),
            backend=str(data["backend"]),
            fe_budget=int(data["fe_budget"]),
            metric_histories=histories,
            final_X=final_x,
            final_F=final_f,
            final_G=matrix("final_G", n),
            final_H=matrix("final_H", n),
            nondominated_indices=indices,
            wall_time_ms=int(data.get("wall_time_ms", 0)),
            log=[str(line) for line in data.get("log", [])],
            meta={str(k): str(v) for k, v in data.get("meta", {}).items()},
        )

    def canonical(self) -> str:
        from .store import canonical_dumps

        return canonical_dumps(self.to_dict())


def persist(payload: RunPayload, path: str | Path) -> Path:
    """Write the canonical serialization of a payload to path."""
    return write_canonical(payload.to_dict(), path)


def load(path: str | Path) -> RunPayload:
    """Read and validate a persisted payload; raises PayloadLoadError."""
    data = read_canonical(path)
    if not isinstance(data, dict):
        raise PayloadLoadError("root", "payload file must contain a JSON object")
    return RunPayload.from_dict(data)
