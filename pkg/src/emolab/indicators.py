"""Quality-indicator kernels and the metric factory.

Degenerate indicator inputs (wrong dimensionality, empty sets, mismatched
column counts) yield NaN rather than raising; downstream tables render NaN
distinctly. All computation is in float64. The hypervolume is exact for two
objectives and Monte-Carlo estimated above that, with a fixed, recorded
sample count and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import FrontApproximation, nondominated_filter
from .errors import ConfigurationError, ContractViolation

METRIC_IDS = ("igd", "igd_plus", "gd", "hv")

HV_MC_SAMPLES = 100_000
HV_MC_SEED = 911

# reference-front aliases accepted in a metric context, in priority order
REFERENCE_KEYS = ("pareto_front", "ref_pf", "reference_front", "pf")

P_MIN, P_MAX = 1.0, 100.0


def clamp_p(p: float) -> float:
    return max(P_MIN, min(float(p), P_MAX))


def igd_pnorm(approx, ref, p: float = 2.0) -> float:
    """Mean over reference rows of the minimum p-norm distance to approx.

    Returns NaN when either matrix is not 2-D, has zero rows, or the column
    counts differ. p is clamped to [1, 100]; p=1 and p=2 take dedicated
    Manhattan/Euclidean paths.
    """
    approx = np.asarray(approx, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)

    if approx.ndim != 2 or ref.ndim != 2:
        return float("nan")
    if approx.shape[0] == 0 or ref.shape[0] == 0:
        return float("nan")
    if approx.shape[1] != ref.shape[1]:
        return float("nan")

    p_safe = clamp_p(p)
    diff = ref[:, None, :] - approx[None, :, :]

    if p_safe == 2.0:
        dist = np.sqrt(np.sum(diff**2, axis=-1))
    elif p_safe == 1.0:
        dist = np.sum(np.abs(diff), axis=-1)
    else:
        dist = np.sum(np.abs(diff) ** p_safe, axis=-1) ** (1.0 / p_safe)

    min_dists = dist.min(axis=1)
    return float(np.mean(min_dists))


def gd_pnorm(approx, ref, p: float = 2.0) -> float:
    """Dual of igd_pnorm: mean over approx rows of min distance to ref."""
    return igd_pnorm(ref, approx, p)


def igd_plus(approx, ref) -> float:
    """Dominance-truncated IGD: only objective excesses over the reference
    contribute to the distance. Same NaN policy as igd_pnorm."""
    approx = np.asarray(approx, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if approx.ndim != 2 or ref.ndim != 2:
        return float("nan")
    if approx.shape[0] == 0 or ref.shape[0] == 0:
        return float("nan")
    if approx.shape[1] != ref.shape[1]:
        return float("nan")
    excess = np.maximum(approx[None, :, :] - ref[:, None, :], 0.0)
    dist = np.sqrt(np.sum(excess**2, axis=-1))
    return float(np.mean(dist.min(axis=1)))


def _hv_exact_2d(front: np.ndarray, ref_point: np.ndarray) -> float:
    mask = np.all(front < ref_point, axis=1)
    pts = front[mask]
    if pts.shape[0] == 0:
        return 0.0
    pts = pts[nondominated_filter(pts)]
    order = np.argsort(pts[:, 0], kind="stable")
    pts = pts[order]
    total = 0.0
    for i in range(pts.shape[0]):
        next_f1 = pts[i + 1, 0] if i + 1 < pts.shape[0] else ref_point[0]
        total += (next_f1 - pts[i, 0]) * (ref_point[1] - pts[i, 1])
    return float(total)


def monte_carlo_hypervolume(
    front: np.ndarray,
    ref_point: np.ndarray,
    n_samples: int = HV_MC_SAMPLES,
    seed: int = HV_MC_SEED,
) -> float:
    """Dominated-volume estimate inside the [min(front), ref_point] box."""
    mask = np.all(front < ref_point, axis=1)
    pts = front[mask]
    if pts.shape[0] == 0:
        return 0.0
    lo = pts.min(axis=0)
    box = np.prod(ref_point - lo)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    samples = lo + rng.random((n_samples, lo.shape[0])) * (ref_point - lo)
    dominated = np.zeros(n_samples, dtype=bool)
    for row in pts:  # chunked over points to bound memory
        dominated |= np.all(row <= samples, axis=1)
    return float(dominated.mean() * box)


def hypervolume(front, ref_point) -> float:
    """Volume dominated by `front` and bounded by `ref_point` (minimization).

    Exact sweep for two objectives; Monte-Carlo with a fixed seed for three
    or more. Points not strictly below the reference point contribute
    nothing; an empty or fully non-contributing front scores 0.
    """
    front = np.atleast_2d(np.asarray(front, dtype=np.float64))
    ref_point = np.asarray(ref_point, dtype=np.float64).reshape(-1)
    if front.size == 0:
        return 0.0
    if front.shape[1] != ref_point.shape[0]:
        raise ContractViolation(
            f"front has {front.shape[1]} columns but ref_point has {ref_point.shape[0]}"
        )
    if front.shape[1] == 2:
        return _hv_exact_2d(front, ref_point)
    return monte_carlo_hypervolume(front, ref_point)


@dataclass(frozen=True)
class MetricSpec:
    """Declarative description of one quality indicator."""

    metric_id: str
    p: float = 2.0
    ref_point: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.metric_id not in METRIC_IDS:
            raise ConfigurationError(f"unknown metric '{self.metric_id}'")
        object.__setattr__(self, "p", clamp_p(self.p))
        if self.ref_point is not None:
            object.__setattr__(self, "ref_point", tuple(float(v) for v in self.ref_point))

    @property
    def direction(self) -> str:
        return "maximize" if self.metric_id == "hv" else "minimize"

    @property
    def requires_reference_front(self) -> bool:
        return self.metric_id in ("igd", "igd_plus", "gd")

    def to_dict(self) -> dict:
        return {
            "metric_id": self.metric_id,
            "direction": self.direction,
            "p": self.p,
            "ref_point": list(self.ref_point) if self.ref_point else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricSpec":
        ref = data.get("ref_point")
        return cls(
            metric_id=data["metric_id"],
            p=data.get("p", 2.0),
            ref_point=tuple(ref) if ref else None,
        )


@dataclass
class MetricHistory:
    """FE-indexed value series for one metric over one run."""

    metric_id: str
    points: list[tuple[int, float]] = field(default_factory=list)

    def append(self, fe: int, value: float) -> None:
        if self.points and fe <= self.points[-1][0]:
            raise ContractViolation("fe must be strictly increasing")
        self.points.append((int(fe), float(value)))

    @property
    def final_value(self) -> float:
        return self.points[-1][1] if self.points else float("nan")


def resolve_reference_front(context: dict) -> np.ndarray:
    """Reference front from a context dict under any accepted alias.

    The context may nest its settings under a "config" key. Missing or
    degenerate references fall back to an empty (0, 0) matrix, which makes
    every reference-based metric evaluate to NaN.
    """
    cfg = context.get("config", context)
    if not isinstance(cfg, dict):
        cfg = context
    pf = None
    for key in REFERENCE_KEYS:
        candidate = cfg.get(key)
        if candidate is not None:
            pf = candidate
            break
    if pf is None:
        return np.empty((0, 0), dtype=np.float64)
    if isinstance(pf, FrontApproximation):
        pf = pf.F
    pf = np.asarray(pf, dtype=np.float64)
    if pf.ndim != 2 or pf.shape[0] == 0:
        return np.empty((0, 0), dtype=np.float64)
    return pf


def make_metric(spec: MetricSpec, context: dict | None = None) -> Callable:
    """Bind a MetricSpec to its context, returning a closure over a front.

    The closure accepts a FrontApproximation or a raw matrix (a single row
    vector is reshaped to one row), carries `metric_id`, `direction` and
    `p` attributes, and never raises on degenerate fronts. Binding an hv
    metric without a reference point is a configuration error.
    """
    context = context or {}
    p = clamp_p(spec.p)
    ref_front = resolve_reference_front(context)

    ref_point = spec.ref_point or context.get("ref_point")
    if spec.metric_id == "hv":
        if ref_point is None:
            raise ConfigurationError("hv metric requires a ref_point")
        ref_point = np.asarray(ref_point, dtype=np.float64).reshape(-1)

    def _coerce(front) -> np.ndarray:
        if isinstance(front, FrontApproximation):
            front = front.F
        s = np.asarray(front, dtype=np.float64)
        if s.ndim == 1:
            s = s.reshape(1, -1)
        return s

    if spec.metric_id == "igd":
        fn = lambda front: igd_pnorm(_coerce(front), ref_front, p)  # noqa: E731
    elif spec.metric_id == "gd":
        fn = lambda front: gd_pnorm(_coerce(front), ref_front, p)  # noqa: E731
    elif spec.metric_id == "igd_plus":
        fn = lambda front: igd_plus(_coerce(front), ref_front)  # noqa: E731
    else:
        fn = lambda front: hypervolume(_coerce(front), ref_point)  # noqa: E731

    fn.__name__ = spec.metric_id
    fn.metric_id = spec.metric_id
    fn.direction = spec.direction
    fn.lower_is_better = spec.direction == "minimize"
    fn.p = p
    fn.ref_front_shape = ref_front.shape
    return fn


def metric_listing() -> list[dict]:
    """Catalog rows for the metric selection panel."""
    return [
        {
            "id": "igd",
            "name": "Inverted generational distance (p-norm)",
            "direction": "minimize",
            "requires_reference_front": True,
            "parameters": {"p": 2.0},
        },
        {
            "id": "igd_plus",
            "name": "IGD+ (dominance-truncated)",
            "direction": "minimize",
            "requires_reference_front": True,
            "parameters": {},
        },
        {
            "id": "gd",
            "name": "Generational distance (p-norm)",
            "direction": "minimize",
            "requires_reference_front": True,
            "parameters": {"p": 2.0},
        },
        {
            "id": "hv",
            "name": "Hypervolume",
            "direction": "maximize",
            "requires_reference_front": False,
            "parameters": {"ref_point": None},
        },
    ]
