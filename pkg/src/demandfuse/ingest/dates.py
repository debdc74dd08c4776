"""Cyclic calendar features.

Four pieces of calendar information map to (sin, cos) pairs of phase
2*pi*x/max(x): day of month, day of year, week of month, month of year.
The maximum for each piece comes from the date's own month and year, so a
31st of March and a 28th of February both land on phase 2*pi.
"""

from __future__ import annotations

import calendar as _cal
import datetime as dt
import math
from dataclasses import dataclass

import numpy as np

FEATURE_NAMES = (
    "day_of_month_sin", "day_of_month_cos",
    "day_of_year_sin", "day_of_year_cos",
    "week_of_month_sin", "week_of_month_cos",
    "month_of_year_sin", "month_of_year_cos",
)


@dataclass(frozen=True)
class DateFeatures:
    day_of_month: tuple[float, float]
    day_of_year: tuple[float, float]
    week_of_month: tuple[float, float]
    month_of_year: tuple[float, float]

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.day_of_month + self.day_of_year
                        + self.week_of_month + self.month_of_year)


def _pair(x: int, max_x: int) -> tuple[float, float]:
    phase = 2.0 * math.pi * x / max_x
    return math.sin(phase), math.cos(phase)


def encode_date(day: dt.date) -> DateFeatures:
    days_in_month = _cal.monthrange(day.year, day.month)[1]
    days_in_year = 366 if _cal.isleap(day.year) else 365
    weeks_in_month = math.ceil(days_in_month / 7)
    return DateFeatures(
        day_of_month=_pair(day.day, days_in_month),
        day_of_year=_pair(day.timetuple().tm_yday, days_in_year),
        week_of_month=_pair(math.ceil(day.day / 7), weeks_in_month),
        month_of_year=_pair(day.month, 12),
    )


def encode_dates(days) -> np.ndarray:
    """Stack encode_date over an iterable of dates into an [n, 8] matrix."""
    return np.array([encode_date(d).vector for d in days]).reshape(-1, 8)
