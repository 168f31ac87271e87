"""Real-coded variation operators: SBX crossover and polynomial mutation.

Both operators consume a numpy Generator passed in by the caller; nothing
here touches global randomness. Offspring are always clipped to bounds.
"""

from __future__ import annotations

import numpy as np


def sbx_crossover(
    p1: np.ndarray,
    p2: np.ndarray,
    eta: float,
    prob: float,
    rng: np.random.Generator,
    lower: np.ndarray,
    upper: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover on one parent pair.

    With probability 1-prob the pair is returned unchanged. Otherwise each
    variable crosses with probability 0.5 using a spread factor drawn from
    the bounded SBX polynomial distribution with index eta; the resulting
    children straddle the parent values and are swapped per variable with
    probability 0.5. Near-identical variables pass through untouched.
    """
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    c1, c2 = p1.copy(), p2.copy()
    if rng.random() > prob:
        return c1, c2
    d = p1.shape[0]
    # fixed draw order keeps rng consumption independent of the mask
    cross = rng.random(d) <= 0.5
    u = rng.random(d)
    swap = rng.random(d) <= 0.5
    cross &= np.abs(p1 - p2) > 1e-14
    idx = np.flatnonzero(cross)
    if idx.size == 0:
        return c1, c2

    y1 = np.minimum(p1[idx], p2[idx])
    y2 = np.maximum(p1[idx], p2[idx])
    span = y2 - y1
    uu = u[idx]
    exponent = 1.0 / (eta + 1.0)

    def spread(beta: np.ndarray) -> np.ndarray:
        alpha = 2.0 - beta ** -(eta + 1.0)
        return np.where(
            uu <= 1.0 / alpha,
            (uu * alpha) ** exponent,
            (1.0 / (2.0 - uu * alpha)) ** exponent,
        )

    beta_lo = 1.0 + 2.0 * (y1 - lower[idx]) / span
    beta_hi = 1.0 + 2.0 * (upper[idx] - y2) / span
    child_lo = 0.5 * ((y1 + y2) - spread(beta_lo) * span)
    child_hi = 0.5 * ((y1 + y2) + spread(beta_hi) * span)
    child_lo = np.clip(child_lo, lower[idx], upper[idx])
    child_hi = np.clip(child_hi, lower[idx], upper[idx])

    sw = swap[idx]
    c1[idx] = np.where(sw, child_hi, child_lo)
    c2[idx] = np.where(sw, child_lo, child_hi)
    return c1, c2


def polynomial_mutation(
    x: np.ndarray,
    eta: float,
    prob: float,
    rng: np.random.Generator,
    lower: np.ndarray,
    upper: np.ndarray,
) -> np.ndarray:
    """Bounded polynomial mutation, applied per variable with probability prob.

    The perturbation distribution respects the distance to each bound, so
    results never leave [lower, upper].
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[0]
    gate = rng.random(d) < prob
    u = rng.random(d)
    if not gate.any():
        return x.copy()
    span = upper - lower
    delta_lo = (x - lower) / span
    delta_hi = (upper - x) / span
    exponent = 1.0 / (eta + 1.0)
    low_side = u <= 0.5
    val_lo = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_lo) ** (eta + 1.0)
    val_hi = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_hi) ** (eta + 1.0)
    deltaq = np.where(
        low_side,
        val_lo**exponent - 1.0,
        1.0 - val_hi**exponent,
    )
    y = x.copy()
    y[gate] = x[gate] + deltaq[gate] * span[gate]
    return np.clip(y, lower, upper)
