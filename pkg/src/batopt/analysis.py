"""Run statistics: summaries, rank-sum testing, and swarm diversity.

The diversity measure is a per-dimension mean absolute deviation from the
population median,

    Div_j = (1/n) sum_i |median(x^j) - x_ij|,     Div = (1/D) sum_j Div_j,

and a run's exploration/exploitation percentages scale each iteration's Div
against the run's maximum:

    XPL% = 100 * Div / Div_max,    XPT% = 100 * |Div - Div_max| / Div_max.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "SampleSummary",
    "DiversitySeries",
    "summarize",
    "diversity",
    "xpl_xpt",
    "wilcoxon_rank_sum",
    "significance_label",
    "write_comparison_csv",
]


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    std: float


def summarize(samples) -> SampleSummary:
    """Mean and sample standard deviation (n - 1 denominator); needs n >= 2."""
    v = np.asarray(samples, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("summarize needs a 1-D sample of size >= 2")
    if not np.all(np.isfinite(v)):
        raise ValueError("samples contain non-finite entries")
    return SampleSummary(n=int(v.size), mean=float(np.mean(v)),
                         std=float(np.std(v, ddof=1)))


def diversity(positions) -> float:
    """Mean absolute deviation from the per-dimension median, averaged over
    dimensions.  positions is an (n, D) array with n >= 1."""
    p = np.asarray(positions, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
        raise ValueError("positions must be a non-empty (n, D) array")
    med = np.median(p, axis=0)
    return float(np.mean(np.abs(p - med)))


@dataclass(frozen=True)
class DiversitySeries:
    """Per-iteration diversity with its exploration/exploitation split."""

    div: tuple
    div_max: float
    xpl_percent: tuple
    xpt_percent: tuple


def xpl_xpt(div_history) -> DiversitySeries:
    """Scale a diversity history into XPL%/XPT% series.

    The reference Div_max is the maximum over the whole history.  A run whose
    diversity is identically zero is treated as pure exploitation: XPL = 0,
    XPT = 100.  Otherwise XPL + XPT = 100 at every iteration.
    """
    div = [float(v) for v in div_history]
    if not div:
        raise ValueError("div_history must be non-empty")
    if any(not math.isfinite(v) or v < 0.0 for v in div):
        raise ValueError("diversity values must be finite and non-negative")
    div_max = max(div)
    if div_max == 0.0:
        xpl = [0.0] * len(div)
        xpt = [100.0] * len(div)
    else:
        # scale the ratio, not the numerator: v / div_max <= 1.0 exactly,
        # so neither percentage can round above 100
        xpl = [100.0 * (v / div_max) for v in div]
        xpt = [100.0 * (abs(v - div_max) / div_max) for v in div]
    return DiversitySeries(div=tuple(div), div_max=div_max,
                           xpl_percent=tuple(xpl), xpt_percent=tuple(xpt))


# ---------------------------------------------------------------------------
# Wilcoxon rank-sum


def _average_ranks(pooled: np.ndarray) -> np.ndarray:
    """Ranks 1..N with ties sharing their average rank."""
    order = np.argsort(pooled, kind="stable")
    ranks = np.empty(pooled.size, dtype=np.float64)
    s = pooled[order]
    i = 0
    while i < s.size:
        j = i
        while j + 1 < s.size and s[j + 1] == s[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _exact_two_sided(w: int, m: int, total: int) -> float:
    """Two-sided p for an integer rank sum w of an m-subset of {1..total},
    by exact enumeration of the null distribution (subset-sum counting)."""
    lo = m * (m + 1) // 2
    hi = m * (2 * total - m + 1) // 2
    # ways[k][s - lo_k] is unwieldy; index sums from 0 to hi directly.
    ways = [[0] * (hi + 1) for _ in range(m + 1)]
    ways[0][0] = 1
    for value in range(1, total + 1):
        for k in range(min(m, value), 0, -1):
            row, prev = ways[k], ways[k - 1]
            for s in range(hi, value - 1, -1):
                c = prev[s - value]
                if c:
                    row[s] += c
    counts = ways[m]
    n_subsets = sum(counts)
    le = sum(counts[:w + 1]) if w >= lo else 0
    ge = sum(counts[w:]) if w <= hi else 0
    p = 2.0 * min(le, ge) / n_subsets
    return min(1.0, p)


def _normal_two_sided(w: float, m: int, n: int, pooled: np.ndarray) -> float:
    """Normal approximation with tie correction and continuity correction."""
    total = m + n
    mu = m * (total + 1) / 2.0
    _, tie_counts = np.unique(pooled, return_counts=True)
    tie_term = float(np.sum(tie_counts ** 3 - tie_counts))
    var = m * n / 12.0 * ((total + 1) - tie_term / (total * (total - 1)))
    if var <= 0.0:
        return 1.0
    z = max(0.0, abs(w - mu) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))


def wilcoxon_rank_sum(a, b, method: str = "auto") -> float:
    """Two-sided rank-sum p-value comparing two independent samples.

    method "auto" enumerates the exact null distribution when the smaller
    sample has at most 10 values and the pooled sample is tie-free, falling
    back to the tie-corrected, continuity-corrected normal approximation
    otherwise; "exact" and "approx" force a path.  Symmetric in (a, b).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1 or a.size < 3 or b.size < 3:
        raise ValueError("both samples need at least 3 values")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("samples contain non-finite entries")
    if method not in ("auto", "exact", "approx"):
        raise ValueError("method must be auto, exact, or approx")
    # Rank from the smaller sample; equal sizes pick a, which matches b's
    # answer exactly because the null distribution is symmetric.
    if a.size <= b.size:
        small, other = a, b
    else:
        small, other = b, a
    pooled = np.concatenate([small, other])
    ties = np.unique(pooled).size < pooled.size
    if method == "exact" and ties:
        raise ValueError("exact enumeration requires tie-free samples")
    use_exact = method == "exact" or (
        method == "auto" and small.size <= 10 and not ties)
    ranks = _average_ranks(pooled)
    w = float(np.sum(ranks[:small.size]))
    if use_exact:
        return _exact_two_sided(int(round(w)), small.size, pooled.size)
    return _normal_two_sided(w, small.size, other.size, pooled)


def significance_label(mean_mba, mean_ba, rel_tol: float = 1e-3) -> str:
    """"+" when the first mean is lower, "-" when higher, "*" when the two
    agree within rel_tol relative to max(|means|, 1)."""
    a = float(mean_mba)
    b = float(mean_ba)
    tol = rel_tol * max(abs(a), abs(b), 1.0)
    if a < b - tol:
        return "+"
    if a > b + tol:
        return "-"
    return "*"


def write_comparison_csv(rows, path, header_note: str = "") -> None:
    """Write comparison rows: function, ba_mean, ba_std, mba_mean, mba_std,
    p_value, label.  Missing cells (single-algorithm runs) stay blank."""

    def cell(v):
        if v is None:
            return ""
        if isinstance(v, str):
            return v
        return repr(float(v))

    with open(path, "w", newline="") as fh:
        if header_note:
            fh.write(f"# {header_note}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function", "ba_mean", "ba_std", "mba_mean",
                         "mba_std", "p_value", "label"])
        for row in rows:
            writer.writerow([row[0]] + [cell(v) for v in row[1:]])
