"""Nonparametric tests used by the cross-project comparison."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm, rankdata, wilcoxon
from statsmodels.stats.multitest import multipletests

# Exact null distribution is enumerated up to this many nonzero differences.
EXACT_MAX_N = 25

STAR_THRESHOLDS: tuple[tuple[float, str], ...] = ((0.001, "***"), (0.01, "**"), (0.05, "*"))


class AllZeroDifferencesError(ValueError):
    """Every paired difference is zero; the signed-rank test is undefined."""


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float
    pvalue: float
    n: int
    exact: bool


def wilcoxon_signed_rank(a: Sequence[float], b: Sequence[float]) -> WilcoxonResult:
    """Two-sided paired signed-rank test on `a - b`.

    Zero differences are dropped. W = min(W+, W-). Exact p when n <= 25 and
    |d| has no ties, otherwise the normal approximation with tie and
    continuity corrections.
    """

    if len(a) != len(b) or not a:
        raise ValueError("samples must be nonempty and of equal length")
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    d = d[d != 0]
    n = int(d.size)
    if n == 0:
        raise AllZeroDifferencesError("all paired differences are zero")

    abs_d = np.abs(d)
    has_ties = np.unique(abs_d).size < n
    if n <= EXACT_MAX_N and not has_ties:
        res = wilcoxon(d, alternative="two-sided", method="exact")
        return WilcoxonResult(float(res.statistic), min(1.0, float(res.pvalue)), n, True)

    ranks = rankdata(abs_d)
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    w = min(w_plus, w_minus)
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(abs_d, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - float((tie_counts**3 - tie_counts).sum()) / 48.0
    if var <= 0:
        return WilcoxonResult(w, 1.0, n, False)
    correction = 0.5 * math.copysign(1.0, w - mean) if w != mean else 0.0
    z = (w - mean - correction) / math.sqrt(var)
    p = float(2.0 * norm.sf(abs(z)))
    return WilcoxonResult(w, min(1.0, p), n, False)


def holm_bonferroni(p_values: Sequence[float]) -> list[float]:
    """Holm step-down adjusted p-values, in input order."""

    if not p_values:
        raise ValueError("holm_bonferroni needs at least one p-value")
    for p in p_values:
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p-value out of (0,1]: {p}")
    _, adjusted, _, _ = multipletests(list(p_values), method="holm")
    return [min(1.0, float(x)) for x in adjusted]


def cliffs_delta(a: Sequence[float], b: Sequence[float]) -> float:
    """(#{a_i > b_j} - #{a_i < b_j}) / (|a| * |b|)."""

    if not a or not b:
        raise ValueError("cliffs_delta needs two nonempty samples")
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    dominance = np.sign(x[:, None] - y[None, :])
    return float(dominance.sum() / (x.size * y.size))


def stars_for(p_adjusted: float | None) -> str:
    if p_adjusted is None:
        return ""
    for threshold, stars in STAR_THRESHOLDS:
        if p_adjusted < threshold:
            return stars
    return ""
