"""Nonparametric benchmark statistics: Wilcoxon signed-rank and Friedman.

The Wilcoxon p-value is exact (signed-rank distribution built by dynamic
programming over the tied average ranks) up to n = 12 effective pairs, and
a tie- and continuity-corrected normal approximation beyond that; the
method_note records which path ran. Chi-square tails come from a local
regularized incomplete gamma implementation, so no statistics library is
required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation

EXACT_WILCOXON_MAX_N = 12


@dataclass(frozen=True)
class TestResult:
    test: str
    statistic: float
    p_value: float
    n: int
    method_note: str

    def to_dict(self) -> dict:
        return {
            "test": self.test,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "n": self.n,
            "method_note": self.method_note,
        }


def average_ranks(values) -> np.ndarray:
    """Ranks 1..n with tied values sharing their average rank."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.shape[0])
    i = 0
    n = values.shape[0]
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _gamma_p_series(a: float, x: float) -> float:
    # lower regularized incomplete gamma by power series; valid for x < a + 1
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(1000):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * 1e-17:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    # upper regularized incomplete gamma by continued fraction; x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def chi_square_sf(x: float, df: int) -> float:
    """Upper-tail probability of the chi-square distribution."""
    if df < 1:
        raise ContractViolation("df must be a positive integer")
    x = float(x)
    if x <= 0.0:
        return 1.0
    a = df / 2.0
    half = x / 2.0
    if half < a + 1.0:
        return 1.0 - _gamma_p_series(a, half)
    return _gamma_q_contfrac(a, half)


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _exact_signed_rank_p(ranks: np.ndarray, w_plus: float) -> float:
    """Two-sided p by the exact distribution of W+ over all sign choices.

    Works on doubled ranks so tied average ranks stay integral.
    """
    scaled = np.rint(2.0 * ranks).astype(int)
    total = int(scaled.sum())
    counts = np.zeros(total + 1, dtype=float)
    counts[0] = 1.0
    for r in scaled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.shape[0] - r]
        counts = counts + shifted
    counts /= counts.sum()
    w2 = int(round(2.0 * w_plus))
    p_le = counts[: w2 + 1].sum()
    p_ge = counts[w2:].sum()
    return min(1.0, 2.0 * min(p_le, p_ge))


def wilcoxon_signed_rank(a, b) -> TestResult:
    """Two-sided paired signed-rank test of a vs b.

    Zero differences are dropped; |d| is ranked with average ranks for
    ties; the statistic is W = min(W+, W-). All-zero differences yield the
    degenerate result p = 1.
    """
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise ContractViolation("paired samples must have equal length")
    d = a - b
    d = d[d != 0.0]
    n = d.shape[0]
    if n == 0:
        return TestResult("wilcoxon_signed_rank", 0.0, 1.0, 0, "degenerate")
    ranks = average_ranks(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    w = min(w_plus, w_minus)
    if n <= EXACT_WILCOXON_MAX_N:
        p = _exact_signed_rank_p(ranks, w_plus)
        return TestResult("wilcoxon_signed_rank", w, p, n, f"exact(n<={EXACT_WILCOXON_MAX_N})")
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(np.abs(d), return_counts=True)
    var -= float(((tie_counts**3 - tie_counts) / 48.0).sum())
    z = (w - mean + 0.5) / math.sqrt(var)
    p = min(1.0, 2.0 * normal_cdf(z))
    return TestResult(
        "wilcoxon_signed_rank", w, p, n, "normal_approximation(tie_corrected)"
    )


def friedman(results, direction: str = "minimize") -> TestResult:
    """Friedman rank test over an (n_problems, k_algorithms) result matrix.

    Rows are ranked so that better means lower rank (direction-aware), with
    average ranks for ties; the statistic is referred to the chi-square
    upper tail with k-1 degrees of freedom.
    """
    M = np.atleast_2d(np.asarray(results, dtype=np.float64))
    n, k = M.shape
    if n < 2 or k < 2:
        raise ContractViolation("friedman needs at least 2 rows and 2 columns")
    bad = np.argwhere(np.isnan(M))
    if bad.size:
        i, j = bad[0]
        raise ContractViolation(f"NaN cell at row {int(i)}, column {int(j)}")
    signed = -M if direction == "maximize" else M
    rank_matrix = np.vstack([average_ranks(row) for row in signed])
    col_sums = rank_matrix.sum(axis=0)
    statistic = 12.0 / (n * k * (k + 1)) * float((col_sums**2).sum()) - 3.0 * n * (k + 1)
    p = chi_square_sf(statistic, k - 1)
    return TestResult("friedman", statistic, p, n, f"chi_square(df={k - 1})")
