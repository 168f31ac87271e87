"""Catalog of built-in benchmark problems.

Each entry knows its conventional dimensions and trait tags and can be
instantiated with per-variant overrides for M and D. Instances carry a
sampled analytical reference front when one is known.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ConfigurationError, UnsupportedProblemError
from . import benchmarks as bm
from .types import ObjectiveBatch, ProblemInstance

DEFAULT_REFERENCE_POINTS = 1000


@dataclass(frozen=True)
class BenchmarkInfo:
    id: str
    name: str
    n_obj: int
    default_n_var: int | None  # None: derived from n_obj (DTLZ: M + 4)
    scalable_obj: bool
    has_closed_front: bool
    tags: frozenset[str]


_BUILTINS: dict[str, BenchmarkInfo] = {
    info.id: info
    for info in [
        BenchmarkInfo("zdt1", "ZDT1", 2, 30, False, True,
                      frozenset({"biobjective", "real", "convex", "easy"})),
        BenchmarkInfo("zdt2", "ZDT2", 2, 30, False, True,
                      frozenset({"biobjective", "real", "nonconvex", "easy"})),
        BenchmarkInfo("zdt3", "ZDT3", 2, 30, False, True,
                      frozenset({"biobjective", "real", "disconnected", "moderate"})),
        BenchmarkInfo("zdt4", "ZDT4", 2, 10, False, True,
                      frozenset({"biobjective", "real", "multimodal", "hard"})),
        BenchmarkInfo("zdt6", "ZDT6", 2, 10, False, True,
                      frozenset({"biobjective", "real", "nonconvex", "biased", "moderate"})),
        BenchmarkInfo("dtlz1", "DTLZ1", 3, None, True, True,
                      frozenset({"scalable", "real", "multimodal", "linear-front", "hard"})),
        BenchmarkInfo("dtlz2", "DTLZ2", 3, None, True, True,
                      frozenset({"scalable", "real", "concave", "easy"})),
    ]
}

_ZDT_EVALUATORS: dict[str, Callable[[np.ndarray], ObjectiveBatch]] = {
    "zdt1": bm.evaluate_zdt1,
    "zdt2": bm.evaluate_zdt2,
    "zdt3": bm.evaluate_zdt3,
    "zdt4": bm.evaluate_zdt4,
    "zdt6": bm.evaluate_zdt6,
}


def builtin_ids() -> list[str]:
    return list(_BUILTINS)


def builtin_listing() -> list[dict]:
    """Catalog rows for trait filtering: id, name, tags, default M/D."""
    rows = []
    for info in _BUILTINS.values():
        rows.append(
            {
                "id": info.id,
                "name": info.name,
                "n_obj": info.n_obj,
                "n_var": info.default_n_var or info.n_obj + 4,
                "scalable_obj": info.scalable_obj,
                "tags": sorted(info.tags),
                "has_closed_front": info.has_closed_front,
            }
        )
    return rows


def make_problem(
    problem_id: str,
    n_obj: int | None = None,
    n_var: int | None = None,
    reference_points: int = DEFAULT_REFERENCE_POINTS,
) -> ProblemInstance:
    """Instantiate a built-in benchmark with optional M/D overrides.

    reference_points = 0 suppresses the attached analytical front.
    """
    pid = problem_id.lower()
    info = _BUILTINS.get(pid)
    if info is None:
        raise UnsupportedProblemError(f"unknown problem '{problem_id}'")

    if n_obj is not None and n_obj != info.n_obj and not info.scalable_obj:
        raise ConfigurationError(f"{info.name} is fixed at {info.n_obj} objectives")
    m = n_obj or info.n_obj
    if m < 2:
        raise ConfigurationError("n_obj must be at least 2")
    d = n_var or info.default_n_var or m + 4
    if d < 2:
        raise ConfigurationError("n_var must be at least 2")

    if pid in _ZDT_EVALUATORS:
        evaluator = _ZDT_EVALUATORS[pid]
        if pid == "zdt4":
            lower, upper = bm.zdt4_bounds(d)
        else:
            lower, upper = np.zeros(d), np.ones(d)
    elif pid == "dtlz1":
        if d < m:
            raise ConfigurationError("DTLZ needs n_var >= n_obj")
        evaluator = lambda X, _m=m: bm.evaluate_dtlz1(X, _m)  # noqa: E731
        lower, upper = np.zeros(d), np.ones(d)
    else:  # dtlz2
        if d < m:
            raise ConfigurationError("DTLZ needs n_var >= n_obj")
        evaluator = lambda X, _m=m: bm.evaluate_dtlz2(X, _m)  # noqa: E731
        lower, upper = np.zeros(d), np.ones(d)

    front = None
    if reference_points and info.has_closed_front:
        front = bm.analytical_front(pid, reference_points, n_obj=m)

    return ProblemInstance(
        id=pid,
        name=info.name,
        n_var=d,
        n_obj=m,
        n_ieq=0,
        n_eq=0,
        lower=lower,
        upper=upper,
        evaluator=evaluator,
        reference_front=front,
        tags=info.tags,
    )
