"""Sliding-window training/evaluation batches.

Windows strictly precede their target day.  Normalization statistics come
from the training range only; raw-unit targets ride along so error metrics
never touch normalized space.
"""

from __future__ import annotations

import datetime as dt
import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError
from .correlate import TrendAssignment
from .dates import encode_dates
from .frames import SeriesFrame

log = logging.getLogger(__name__)

STD_FLOOR = 1e-8
NEWS_DIM = 64


@dataclass(frozen=True)
class Normalizer:
    mean: float
    std: float

    @classmethod
    def fit(cls, train_values: np.ndarray, mode: str = "zscore") -> "Normalizer":
        if mode == "none":
            return cls(0.0, 1.0)
        return cls(float(train_values.mean()), max(float(train_values.std()), STD_FLOOR))

    def transform(self, x):
        return (np.asarray(x, dtype=np.float64) - self.mean) / self.std

    def invert(self, x):
        return np.asarray(x, dtype=np.float64) * self.std + self.mean


@dataclass
class WindowBatch:
    """Model-ready inputs for one category and one split."""

    category: str
    sales: np.ndarray              # [n, w_s], normalized
    trend: np.ndarray | None       # [n, w_g], normalized, None without assignment
    dates: np.ndarray              # [n, 8] cyclic features of the target day
    news: np.ndarray               # [n, 64], zero until an encoder fills it
    targets_raw: np.ndarray        # [n]
    targets_norm: np.ndarray       # [n]
    target_indices: np.ndarray     # [n] day offsets into the frame calendar
    target_dates: tuple[dt.date, ...]
    sales_norm: Normalizer
    trend_norm: Normalizer | None
    skipped: int = 0

    def __len__(self):
        return len(self.targets_raw)


def make_windows(
    frame: SeriesFrame,
    assignment: TrendAssignment,
    w_s: int,
    w_g: int,
    split: str = "train",
    trend_frame: SeriesFrame | None = None,
    normalization: str = "zscore",
) -> WindowBatch:
    """Cut `[t - w, t)` windows for every target day `t` in the given split."""
    if split not in ("train", "test"):
        raise ContractError(f"split must be 'train' or 'test', got {split!r}")
    series = frame.series(assignment.product_category)
    sales_norm = Normalizer.fit(series[: frame.split_index], normalization)
    norm_series = sales_norm.transform(series)

    trend_series = None
    trend_norm = None
    if assignment.has_trend:
        if trend_frame is None:
            raise ContractError(f"assignment names trend {assignment.trend_category!r} "
                                "but no trend frame was given")
        raw_trend = trend_frame.series(assignment.trend_category)
        trend_norm = Normalizer.fit(raw_trend[: frame.split_index], normalization)
        trend_series = trend_norm.transform(raw_trend)

    history = w_s if trend_series is None else max(w_s, w_g)
    if split == "train":
        lo, hi = history, frame.split_index
        skipped = min(history, frame.split_index)  # leading days with short history
    else:
        lo, hi = max(history, frame.split_index), frame.n_days
        skipped = max(0, min(history, frame.n_days) - frame.split_index)
    if lo >= hi:
        log.warning("no %s windows for %s: history %d exceeds range", split,
                    assignment.product_category, history)
    targets = np.arange(lo, hi, dtype=int)

    sales = np.stack([norm_series[t - w_s:t] for t in targets]) if len(targets) \
        else np.empty((0, w_s))
    if trend_series is not None:
        trend = np.stack([trend_series[t - w_g:t] for t in targets]) if len(targets) \
            else np.empty((0, w_g))
    else:
        trend = None
    dates = tuple(frame.calendar[t] for t in targets)
    return WindowBatch(
        category=assignment.product_category,
        sales=sales,
        trend=trend,
        dates=encode_dates(dates),
        news=np.zeros((len(targets), NEWS_DIM)),
        targets_raw=series[targets] if len(targets) else np.empty(0),
        targets_norm=norm_series[targets] if len(targets) else np.empty(0),
        target_indices=targets,
        target_dates=dates,
        sales_norm=sales_norm,
        trend_norm=trend_norm,
        skipped=skipped,
    )
