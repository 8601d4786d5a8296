"""Regression evaluation: MSE, Spearman correlation, inlier growth curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats


class LengthMismatch(ValueError):
    pass


class EmptyInput(ValueError):
    pass


class DegenerateInput(ValueError):
    """Spearman is undefined when either input has no rank variation."""


def _as_pair(pred: Sequence[float], gt: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(pred, dtype=float)
    g = np.asarray(gt, dtype=float)
    if p.shape != g.shape:
        raise LengthMismatch(f"{p.shape} vs {g.shape}")
    if p.size == 0:
        raise EmptyInput("empty input")
    return p, g


def mse(pred: Sequence[float], gt: Sequence[float]) -> float:
    p, g = _as_pair(pred, gt)
    return float(np.mean((p - g) ** 2))


def spearman(pred: Sequence[float], gt: Sequence[float]) -> float:
    """Pearson correlation of average-assigned ranks (ties share the mean
    rank)."""
    p, g = _as_pair(pred, gt)
    if p.size < 2:
        raise DegenerateInput("need at least 2 samples")
    if np.all(p == p[0]) or np.all(g == g[0]):
        raise DegenerateInput("constant input has no rank variation")
    rp = stats.rankdata(p)
    rg = stats.rankdata(g)
    return float(np.corrcoef(rp, rg)[0, 1])


@dataclass(frozen=True)
class GrowthPoint:
    n_included: int
    mse: float
    spearman: Optional[float]  # None when the subset is rank-degenerate


@dataclass(frozen=True)
class RegressionEvalReport:
    mse: float
    spearman: Optional[float]
    growth: Tuple[GrowthPoint, ...]


def inlier_growth_curves(pred: Sequence[float], gt: Sequence[float]
                         ) -> RegressionEvalReport:
    """Metrics over growing inlier subsets.

    Samples are sorted by squared error ascending (stable on the original
    order); for every n in 2..N the report holds MSE and Spearman over the
    n best samples, so the final entry equals the full-set metrics.
    """
    p, g = _as_pair(pred, gt)
    order = np.argsort((p - g) ** 2, kind="stable")
    ps, gs = p[order], g[order]
    points: List[GrowthPoint] = []
    for n in range(2, len(ps) + 1):
        sub_mse = mse(ps[:n], gs[:n])
        try:
            sub_rho = spearman(ps[:n], gs[:n])
        except DegenerateInput:
            sub_rho = None
        points.append(GrowthPoint(n_included=n, mse=sub_mse, spearman=sub_rho))
    full_mse = mse(p, g)
    try:
        full_rho = spearman(p, g)
    except DegenerateInput:
        full_rho = None
    return RegressionEvalReport(mse=full_mse, spearman=full_rho,
                                growth=tuple(points))
