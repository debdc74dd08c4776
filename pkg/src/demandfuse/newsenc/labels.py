"""Per-day sales-move targets: a rise flag and a dip flag per category.

A day counts as a rise when sales reach 105% of the baseline and as a dip
at 95% or below; in between both flags stay 0, so the two are never set
together.  The baseline is the trailing 7-day mean by default (robust to
day-of-week effects) or the previous day's sales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractError
from ..ingest.frames import SeriesFrame

RISE_FACTOR = 1.05
DIP_FACTOR = 0.95
TRAILING_DAYS = 7


@dataclass(frozen=True)
class MoveLabels:
    """labels[t, 2*i] is the rise flag and labels[t, 2*i + 1] the dip flag
    for category i on day t; undefined[t] marks days whose baseline could
    not be computed (warm-up or zero baseline), where both flags are 0."""

    categories: tuple[str, ...]
    labels: np.ndarray
    undefined: np.ndarray

    @property
    def n_outputs(self) -> int:
        return 2 * len(self.categories)

    def rise(self, category_index: int) -> np.ndarray:
        return self.labels[:, 2 * category_index]

    def dip(self, category_index: int) -> np.ndarray:
        return self.labels[:, 2 * category_index + 1]


def build_labels(frame: SeriesFrame, rule: str = "trailing7") -> MoveLabels:
    if rule not in ("trailing7", "prev_day"):
        raise ContractError(f"unknown baseline rule {rule!r}")
    n_cat, n_days = frame.values.shape
    labels = np.zeros((n_days, 2 * n_cat))
    undefined = np.zeros(n_days, dtype=bool)
    warmup = TRAILING_DAYS if rule == "trailing7" else 1
    undefined[:warmup] = True
    for t in range(warmup, n_days):
        if rule == "trailing7":
            baseline = frame.values[:, t - TRAILING_DAYS:t].mean(axis=1)
        else:
            baseline = frame.values[:, t - 1]
        sales = frame.values[:, t]
        usable = baseline > 0
        if not usable.all():
            undefined[t] = True
        rise = usable & (sales >= RISE_FACTOR * baseline)
        dip = usable & (sales <= DIP_FACTOR * baseline)
        labels[t, 0::2] = rise.astype(float)
        labels[t, 1::2] = dip.astype(float)
    return MoveLabels(frame.categories, labels, undefined)
