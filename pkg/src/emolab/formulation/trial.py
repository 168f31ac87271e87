"""Trial evaluation: the runtime gate of the verification chain.

Probes a Latin hypercube over the box plus deterministic boundary points:
for each axis, the exact lower and upper bound (other coordinates at the
midpoint), and two near-corner points offset 1e-9 inside the box. Exact
bounds are legal inputs (the box is closed), and they are what exposes
singularities like 1/x or log(x) at a zero bound.
"""

from __future__ import annotations

import numpy as np

from ..core import ProblemInstance
from ..errors import ConfigurationError

TRIAL_SEED = 977
BOUNDARY_OFFSET = 1e-9
MAX_BOUNDARY_POINTS = 64


def latin_hypercube(
    n_samples: int, lower: np.ndarray, upper: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    d = lower.shape[0]
    out = np.empty((n_samples, d))
    for j in range(d):
        strata = (rng.permutation(n_samples) + rng.random(n_samples)) / n_samples
        out[:, j] = lower[j] + strata * (upper[j] - lower[j])
    return out


def boundary_probes(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    d = lower.shape[0]
    mid = (lower + upper) / 2.0
    rows = []
    for j in range(d):
        if len(rows) + 2 > MAX_BOUNDARY_POINTS:
            break
        at_lower = mid.copy()
        at_lower[j] = lower[j]
        at_upper = mid.copy()
        at_upper[j] = upper[j]
        rows.extend([at_lower, at_upper])
    span = upper - lower
    offset = np.minimum(BOUNDARY_OFFSET, span / 2.0)
    if len(rows) + 2 <= MAX_BOUNDARY_POINTS + 2:
        rows.append(lower + offset)
        rows.append(upper - offset)
    return np.asarray(rows)


def trial_evaluate(
    instance: ProblemInstance, n_samples: int = 64, seed: int = TRIAL_SEED
) -> list[str]:
    """Diagnostics from evaluating probe points; empty means pass."""
    if n_samples < 1:
        raise ConfigurationError("n_samples must be positive")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    samples = latin_hypercube(n_samples, instance.lower, instance.upper, rng)
    probes = boundary_probes(instance.lower, instance.upper)
    X = np.vstack([samples, probes])

    try:
        batch = instance.evaluate(X)
    except Exception as exc:
        return [f"evaluation raised: {exc}"]

    diagnostics: list[str] = []
    for name, matrix in (("objective", batch.F), ("inequality", batch.G), ("equality", batch.H)):
        if matrix.size == 0:
            continue
        bad_rows = np.flatnonzero(~np.isfinite(matrix).all(axis=1))
        if bad_rows.size:
            row = int(bad_rows[0])
            diagnostics.append(
                f"non-finite {name} output at probe row {row}, "
                f"x = {np.round(X[row], 6).tolist()}"
            )
    return diagnostics
