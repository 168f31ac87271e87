"""Campaign summary tables: mean +/- std per (problem, M, D) x algorithm."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SummaryCell:
    mean: float
    std: float
    n: int
    best: bool = False

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "n": self.n, "best": self.best}


@dataclass
class SummaryRow:
    problem_id: str
    n_obj: int
    n_var: int
    cells: dict[str, SummaryCell] = field(default_factory=dict)

    @property
    def key(self) -> tuple:
        return (self.problem_id, self.n_obj, self.n_var)

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "n_obj": self.n_obj,
            "n_var": self.n_var,
            "cells": {alg: c.to_dict() for alg, c in self.cells.items()},
        }


@dataclass
class SummaryTable:
    metric_id: str
    direction: str
    algorithms: list[str]
    rows: list[SummaryRow]

    def to_dict(self) -> dict:
        return {
            "metric_id": self.metric_id,
            "direction": self.direction,
            "algorithms": list(self.algorithms),
            "rows": [r.to_dict() for r in self.rows],
        }

    def values_matrix(self, reducer: str = "mean") -> np.ndarray:
        """(rows x algorithms) matrix of cell means, NaN for missing cells."""
        out = np.full((len(self.rows), len(self.algorithms)), np.nan)
        for i, row in enumerate(self.rows):
            for j, alg in enumerate(self.algorithms):
                cell = row.cells.get(alg)
                if cell is not None:
                    out[i, j] = cell.mean
        return out


def _cell(values: list[float]) -> SummaryCell:
    arr = np.asarray(values, dtype=np.float64)
    n = arr.shape[0]
    if n == 0:
        return SummaryCell(math.nan, math.nan, 0)
    mean = float(arr.mean())
    std = 0.0 if n == 1 else float(arr.std(ddof=1))
    if math.isnan(mean):
        std = math.nan
    return SummaryCell(mean, std, n)


def summarize(
    groups: dict[tuple, dict[str, list[float]]],
    metric_id: str,
    direction: str,
    algorithms: list[str] | None = None,
) -> SummaryTable:
    """Build the summary table from metric values grouped per cell.

    groups maps (problem_id, n_obj, n_var) -> {algorithm_id: [run values]}.
    Sample standard deviation uses the n-1 denominator (0 for a single
    run). The best cell per row is the extremal mean respecting direction;
    NaN cells never win; exact mean ties mark every tied cell.
    """
    if algorithms is None:
        algorithms = sorted({alg for cells in groups.values() for alg in cells})
    rows: list[SummaryRow] = []
    for key in sorted(groups, key=lambda k: (str(k[0]), k[1] or 0, k[2] or 0)):
        problem_id, n_obj, n_var = key
        cells = {
            alg: _cell(groups[key].get(alg, []))
            for alg in algorithms
            if alg in groups[key]
        }
        finite = {alg: c.mean for alg, c in cells.items() if not math.isnan(c.mean)}
        if finite:
            target = min(finite.values()) if direction == "minimize" else max(finite.values())
            cells = {
                alg: SummaryCell(c.mean, c.std, c.n, best=(not math.isnan(c.mean)) and c.mean == target)
                for alg, c in cells.items()
            }
        rows.append(SummaryRow(problem_id, n_obj, n_var, cells))
    return SummaryTable(metric_id, direction, algorithms, rows)


def groups_from_records(records: list[dict], metric_id: str) -> dict:
    """Adapt recomputed metric records into summarize() groups."""
    groups: dict[tuple, dict[str, list[float]]] = {}
    for record in records:
        key = (record["problem_id"], record.get("n_obj"), record.get("n_var"))
        alg = record["algorithm_id"]
        groups.setdefault(key, {}).setdefault(alg, []).append(
            record["values"].get(metric_id, math.nan)
        )
    return groups
