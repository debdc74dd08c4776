"""Trend-to-category assignment by Pearson correlation on the training range."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, UndefinedCorrelationError

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.4


@dataclass(frozen=True)
class TrendAssignment:
    product_category: str
    trend_category: str | None
    correlation: float

    @property
    def has_trend(self) -> bool:
        return self.trend_category is not None


def pearson(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ContractError(f"series must be equal-length 1-d, got {a.shape} vs {b.shape}")
    if a.size < 3:
        raise ContractError(f"need at least 3 observations, got {a.size}")
    da, db = a - a.mean(), b - b.mean()
    va, vb = float(da @ da), float(db @ db)
    if va == 0.0 or vb == 0.0:
        raise UndefinedCorrelationError("zero-variance series has no defined correlation")
    r = float(da @ db / np.sqrt(va * vb))
    return min(1.0, max(-1.0, r))


def select_trend(
    product_category: str,
    product_train_series,
    trend_train_series: dict[str, np.ndarray],
    threshold: float = DEFAULT_THRESHOLD,
) -> TrendAssignment:
    """Pick the single best-correlated trend series, if it clears the threshold.

    Correlations must be computed on training data only, so callers pass
    pre-sliced series.  Zero-variance trends are skipped, not an error.
    Exact ties resolve to the lexicographically first trend name and are
    logged.
    """
    scored: list[tuple[str, float]] = []
    for name in sorted(trend_train_series):
        try:
            scored.append((name, pearson(product_train_series, trend_train_series[name])))
        except UndefinedCorrelationError:
            continue
    if not scored:
        return TrendAssignment(product_category, None, 0.0)
    best_name, best_r = scored[0]
    for name, r in scored[1:]:
        if r > best_r:  # names arrive sorted, so ties keep the first
            best_name, best_r = name, r
    ties = [name for name, r in scored if r == best_r]
    if len(ties) > 1:
        log.info("trend tie for %s at r=%.6f among %s; keeping %s",
                 product_category, best_r, ties, best_name)
    if best_r > threshold:
        return TrendAssignment(product_category, best_name, best_r)
    return TrendAssignment(product_category, None, best_r)
