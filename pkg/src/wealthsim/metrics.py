"""Inequality measures: Gini coefficient, quantile wealth shares, decile histograms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

N_BINS = 10


@dataclass(frozen=True)
class MetricsFrame:
    iteration: int
    gini: float
    share_bottom50: float
    share_top10: float
    share_top1: float
    total_wealth: float


@dataclass(frozen=True)
class HistogramSnapshot:
    iteration: int
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


def gini(wealth) -> float:
    """Gini coefficient via the sorted-rank formula.

    With ascending order and 1-based ranks ``k``,
    ``g = 2 * sum(k * m_k) / (N * sum(m)) - (N + 1) / N``, which equals the
    normalised mean absolute difference over all ordered pairs.  An all-zero
    vector is treated as perfectly equal.
    """
    m = np.sort(np.asarray(wealth, dtype=np.float64))
    n = m.size
    total = m.sum()
    if total == 0.0:
        return 0.0
    ranks = np.arange(1, n + 1, dtype=np.float64)
    g = 2.0 * np.dot(ranks, m) / (n * total) - (n + 1) / n
    return float(min(max(g, 0.0), (n - 1) / n))


def gini_pairwise(wealth) -> float:
    """O(N^2) mean-absolute-difference Gini; reference implementation for tests."""
    m = np.asarray(wealth, dtype=np.float64)
    n = m.size
    total = m.sum()
    if total == 0.0:
        return 0.0
    diffs = np.abs(m[:, None] - m[None, :]).sum()
    return float(diffs / (2.0 * n * n * (total / n)))


def group_sizes(n: int) -> tuple[int, int, int]:
    """Head counts of the bottom half, top tenth and top hundredth."""
    return n // 2, math.ceil(n / 10), math.ceil(n / 100)


def quantile_shares(wealth) -> tuple[float, float, float]:
    """Wealth shares of the poorest half, richest 10% and richest 1%.

    Returns head-count fractions when total wealth is zero.
    """
    m = np.sort(np.asarray(wealth, dtype=np.float64), kind="stable")
    n = m.size
    bottom, top10, top1 = group_sizes(n)
    total = m.sum()
    if total == 0.0:
        return bottom / n, top10 / n, top1 / n
    return (
        float(m[:bottom].sum() / total),
        float(m[n - top10 :].sum() / total),
        float(m[n - top1 :].sum() / total),
    )


def decile_histogram(wealth, iteration: int = 0) -> HistogramSnapshot:
    """Ten equal-width bins over [0, max(wealth)], the last bin closed."""
    m = np.asarray(wealth, dtype=np.float64)
    top = float(m.max())
    if top == 0.0:
        counts = np.zeros(N_BINS, dtype=np.int64)
        counts[0] = m.size
        edges = np.zeros(N_BINS + 1)
    else:
        edges = np.linspace(0.0, top, N_BINS + 1)
        idx = np.minimum((N_BINS * (m / top)).astype(np.int64), N_BINS - 1)
        # nudge values the scaled division put on the wrong side of an edge
        idx -= (idx > 0) & (m < edges[idx])
        idx += (idx < N_BINS - 1) & (m >= edges[np.minimum(idx + 1, N_BINS)])
        counts = np.bincount(idx, minlength=N_BINS)
    return HistogramSnapshot(
        iteration=iteration,
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
    )


def measure(wealth: np.ndarray, iteration: int, total: float) -> MetricsFrame:
    bottom50, top10, top1 = quantile_shares(wealth)
    return MetricsFrame(
        iteration=iteration,
        gini=gini(wealth),
        share_bottom50=bottom50,
        share_top10=top10,
        share_top1=top1,
        total_wealth=total,
    )
