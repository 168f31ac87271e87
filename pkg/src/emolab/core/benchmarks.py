"""Built-in benchmark problems and their closed-form Pareto fronts.

ZDT evaluators take an (N, D) matrix and derive D from it; DTLZ evaluators
additionally take the objective count. All evaluators are vectorized over
rows, pure, and reject out-of-bounds input.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ContractViolation, UnsupportedProblemError
from .types import FrontApproximation, ObjectiveBatch, empty_constraints

# Nondominated f1 intervals of the discontinuous ZDT3 front.
_ZDT3_REGIONS = [
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
]

# Left edge of the ZDT6 front: minimum of 1 - exp(-4 x) sin^6(6 pi x) on [0, 1].
_ZDT6_F1_MIN = 0.2807753191

_UNIT = (0.0, 1.0)


def _check_box(X: np.ndarray, lower, upper) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    bad = np.where((X < lower) | (X > upper))
    if bad[0].size:
        raise ContractViolation(
            f"row {int(bad[0][0])} outside bounds in variable {int(bad[1][0])}"
        )
    return X


def _zdt_g(X: np.ndarray) -> np.ndarray:
    d = X.shape[1]
    return 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (d - 1)


def _batch(f1: np.ndarray, f2: np.ndarray) -> ObjectiveBatch:
    n = f1.shape[0]
    return ObjectiveBatch(
        F=np.column_stack([f1, f2]), G=empty_constraints(n), H=empty_constraints(n)
    )


def evaluate_zdt1(X: np.ndarray) -> ObjectiveBatch:
    """ZDT1: convex front f2 = 1 - sqrt(f1), reached at x_2..D = 0."""
    X = _check_box(X, *_UNIT)
    f1 = X[:, 0]
    g = _zdt_g(X)
    return _batch(f1, g * (1.0 - np.sqrt(f1 / g)))


def evaluate_zdt2(X: np.ndarray) -> ObjectiveBatch:
    """ZDT2: nonconvex front f2 = 1 - f1^2."""
    X = _check_box(X, *_UNIT)
    f1 = X[:, 0]
    g = _zdt_g(X)
    return _batch(f1, g * (1.0 - (f1 / g) ** 2))


def evaluate_zdt3(X: np.ndarray) -> ObjectiveBatch:
    """ZDT3: front split into five disconnected convex pieces."""
    X = _check_box(X, *_UNIT)
    f1 = X[:, 0]
    g = _zdt_g(X)
    h = 1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1)
    return _batch(f1, g * h)


def evaluate_zdt4(X: np.ndarray) -> ObjectiveBatch:
    """ZDT4: multimodal; x1 in [0, 1], remaining variables in [-5, 5]."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    lo, hi = zdt4_bounds(X.shape[1])
    X = _check_box(X, lo, hi)
    f1 = X[:, 0]
    rest = X[:, 1:]
    g = (
        1.0
        + 10.0 * (X.shape[1] - 1)
        + (rest**2 - 10.0 * np.cos(4.0 * np.pi * rest)).sum(axis=1)
    )
    return _batch(f1, g * (1.0 - np.sqrt(f1 / g)))


def evaluate_zdt6(X: np.ndarray) -> ObjectiveBatch:
    """ZDT6: biased density, nonconvex front f2 = 1 - f1^2."""
    X = _check_box(X, *_UNIT)
    f1 = 1.0 - np.exp(-4.0 * X[:, 0]) * np.sin(6.0 * np.pi * X[:, 0]) ** 6
    g = 1.0 + 9.0 * (X[:, 1:].sum(axis=1) / (X.shape[1] - 1)) ** 0.25
    return _batch(f1, g * (1.0 - (f1 / g) ** 2))


def zdt4_bounds(n_var: int) -> tuple[np.ndarray, np.ndarray]:
    lo = np.full(n_var, -5.0)
    hi = np.full(n_var, 5.0)
    lo[0], hi[0] = 0.0, 1.0
    return lo, hi


def evaluate_dtlz1(X: np.ndarray, n_obj: int = 3) -> ObjectiveBatch:
    """DTLZ1: linear front sum(f) = 0.5 with many local fronts."""
    X = _check_box(X, *_UNIT)
    m = n_obj
    xm = X[:, m - 1 :]
    k = xm.shape[1]
    g = 100.0 * (
        k + ((xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (xm - 0.5))).sum(axis=1)
    )
    F = np.empty((X.shape[0], m))
    for i in range(m):
        f = 0.5 * (1.0 + g)
        if m - 1 - i > 0:
            f = f * np.prod(X[:, : m - 1 - i], axis=1)
        if i > 0:
            f = f * (1.0 - X[:, m - 1 - i])
        F[:, i] = f
    n = X.shape[0]
    return ObjectiveBatch(F=F, G=empty_constraints(n), H=empty_constraints(n))


def evaluate_dtlz2(X: np.ndarray, n_obj: int = 3) -> ObjectiveBatch:
    """DTLZ2: concave front on the unit sphere."""
    X = _check_box(X, *_UNIT)
    m = n_obj
    xm = X[:, m - 1 :]
    g = ((xm - 0.5) ** 2).sum(axis=1)
    angles = X[:, : m - 1] * (np.pi / 2.0)
    F = np.empty((X.shape[0], m))
    for i in range(m):
        f = 1.0 + g
        if m - 1 - i > 0:
            f = f * np.prod(np.cos(angles[:, : m - 1 - i]), axis=1)
        if i > 0:
            f = f * np.sin(angles[:, m - 1 - i])
        F[:, i] = f
    n = X.shape[0]
    return ObjectiveBatch(F=F, G=empty_constraints(n), H=empty_constraints(n))


def simplex_lattice(m: int, partitions: int) -> np.ndarray:
    """All m-part compositions of `partitions`, divided by `partitions`.

    Rows are in lexicographic order; the row count is C(partitions+m-1, m-1).
    """
    if m < 1 or partitions < 1:
        raise ContractViolation("m and partitions must be positive")

    rows: list[list[float]] = []

    def fill(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            rows.append([v / partitions for v in prefix + [remaining]])
            return
        for v in range(remaining + 1):
            fill(prefix + [v], remaining - v, slots - 1)

    fill([], partitions, m)
    return np.asarray(rows, dtype=np.float64)


def lattice_size(m: int, partitions: int) -> int:
    return math.comb(partitions + m - 1, m - 1)


def _f1_samples(n_points: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    if n_points == 1:
        return np.array([lo])
    return lo + (hi - lo) * np.arange(n_points) / (n_points - 1)


def _zdt3_front_f1(n_points: int) -> np.ndarray:
    lengths = [b - a for a, b in _ZDT3_REGIONS]
    total = sum(lengths)
    arc = _f1_samples(n_points, 0.0, total)
    out = np.empty(n_points)
    for j, s in enumerate(arc):
        for (a, b), ln in zip(_ZDT3_REGIONS, lengths):
            if s <= ln or (a, b) == _ZDT3_REGIONS[-1]:
                out[j] = min(a + s, b)
                break
            s -= ln
    return out


def _lattice_directions(m: int, n_points: int) -> np.ndarray:
    """Smallest simplex lattice covering n_points, evenly subsampled."""
    p = 1
    while lattice_size(m, p) < n_points:
        p += 1
    w = simplex_lattice(m, p)
    if w.shape[0] == n_points:
        return w
    idx = np.round(np.linspace(0, w.shape[0] - 1, n_points)).astype(int)
    return w[idx]


def analytical_front(
    problem_id: str, n_points: int, n_obj: int | None = None
) -> FrontApproximation:
    """Closed-form Pareto front sampled at n_points.

    Biobjective fronts are sampled uniformly along f1 (f1 = i/(n-1); a single
    point sits at f1's lower edge). DTLZ fronts with M >= 3 are sampled on a
    simplex lattice subsampled to exactly n_points rows.

    Raises UnsupportedProblemError for ids without a known closed form.
    """
    if n_points < 1:
        raise ContractViolation("n_points must be positive")
    pid = problem_id.lower()
    if pid in ("zdt1", "zdt4"):
        f1 = _f1_samples(n_points)
        F = np.column_stack([f1, 1.0 - np.sqrt(f1)])
    elif pid == "zdt2":
        f1 = _f1_samples(n_points)
        F = np.column_stack([f1, 1.0 - f1**2])
    elif pid == "zdt3":
        f1 = _zdt3_front_f1(n_points)
        F = np.column_stack(
            [f1, 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)]
        )
    elif pid == "zdt6":
        f1 = _f1_samples(n_points, _ZDT6_F1_MIN, 1.0)
        F = np.column_stack([f1, 1.0 - f1**2])
    elif pid == "dtlz1":
        m = n_obj or 3
        F = 0.5 * _lattice_directions(m, n_points)
    elif pid == "dtlz2":
        m = n_obj or 3
        w = _lattice_directions(m, n_points)
        norms = np.linalg.norm(w, axis=1)
        F = w / norms[:, None]
    else:
        raise UnsupportedProblemError(
            f"no closed-form front for problem '{problem_id}'"
        )
    return FrontApproximation(F=F, problem_id=pid, meta={"source": "analytical"})
