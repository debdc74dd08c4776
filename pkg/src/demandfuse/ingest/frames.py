"""Daily series containers and CSV loaders.

Sales files are long form (``date,category,units``, item rows allowed);
trend files are wide form (``date,<name>,...``).  Loaders produce a dense
category-by-day matrix on a contiguous daily calendar, filling days with
no rows at all with zeros and remembering which days were filled.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError

# Category dropped when a file carries the 21-category supermarket layout.
SPARSE_CATEGORY = "LAWN AND GARDEN"
PAPER_CATEGORY_COUNT = 21
PAPER_DAY_COUNT = 1610
PAPER_SPLIT_INDEX = 1300


@dataclass(frozen=True)
class SeriesFrame:
    """Aligned daily series for a set of named categories.

    `values[i, j]` is the value of `categories[i]` on `calendar[j]`.  The
    calendar is contiguous (one entry per day); `filled_days` lists days
    that had no source rows and were zero-filled.
    """

    calendar: tuple[dt.date, ...]
    categories: tuple[str, ...]
    values: np.ndarray
    split_index: int
    filled_days: tuple[dt.date, ...] = field(default=())

    def __post_init__(self):
        if self.values.shape != (len(self.categories), len(self.calendar)):
            raise InputError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.categories)} categories x {len(self.calendar)} days"
            )
        for a, b in zip(self.calendar, self.calendar[1:]):
            if (b - a).days != 1:
                raise InputError(f"calendar gap between {a} and {b}")

    @property
    def n_days(self) -> int:
        return len(self.calendar)

    def day_index(self, day: dt.date) -> int:
        offset = (day - self.calendar[0]).days
        if not 0 <= offset < self.n_days:
            raise InputError(f"{day} outside calendar {self.calendar[0]}..{self.calendar[-1]}")
        return offset

    def series(self, category: str) -> np.ndarray:
        try:
            row = self.categories.index(category)
        except ValueError:
            raise InputError(f"unknown category {category!r}") from None
        return self.values[row]

    def train_slice(self, category: str) -> np.ndarray:
        return self.series(category)[: self.split_index]


def _parse_date(text: str, line_no: int) -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError:
        raise InputError(f"line {line_no}: unparseable date {text!r}") from None


def _default_split(n_days: int) -> int:
    if n_days == PAPER_DAY_COUNT:
        return PAPER_SPLIT_INDEX
    return int(round(n_days * 0.8))


def load_sales(path, split_index: int | None = None) -> SeriesFrame:
    """Aggregate item-level sales rows into a per-category daily frame.

    Rows sum per (category, day).  Negative aggregates (returns exceeding
    sales) clamp to zero.  When the file carries the 21-category
    supermarket layout, the extreme-sparsity category is dropped, leaving
    20.
    """
    totals: dict[tuple[str, dt.date], float] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty file")
        cols = [c.strip().lower() for c in header]
        try:
            i_date, i_cat, i_units = cols.index("date"), cols.index("category"), cols.index("units")
        except ValueError:
            raise InputError(f"{path}: header must contain date,category,units") from None
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            day = _parse_date(row[i_date], line_no)
            category = row[i_cat].strip()
            try:
                units = float(row[i_units])
            except ValueError:
                raise InputError(f"line {line_no}: unparseable units {row[i_units]!r}") from None
            key = (category, day)
            totals[key] = totals.get(key, 0.0) + units
    if not totals:
        raise InputError(f"{path}: no data rows")

    categories = sorted({cat for cat, _ in totals})
    if len(categories) == PAPER_CATEGORY_COUNT and SPARSE_CATEGORY in categories:
        categories.remove(SPARSE_CATEGORY)

    days = [d for _, d in totals.keys()]
    first, last = min(days), max(days)
    calendar = tuple(first + dt.timedelta(days=i) for i in range((last - first).days + 1))
    row_of = {c: i for i, c in enumerate(categories)}
    values = np.zeros((len(categories), len(calendar)))
    observed = set()
    for (category, day), units in totals.items():
        observed.add(day)
        if category not in row_of:
            continue
        values[row_of[category], (day - first).days] = max(units, 0.0)
    filled = tuple(d for d in calendar if d not in observed)
    split = split_index if split_index is not None else _default_split(len(calendar))
    return SeriesFrame(calendar, tuple(categories), values, split, filled)


def load_trends(path, split_index: int | None = None) -> SeriesFrame:
    """Load the wide-form daily trend file (one column per trend category)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty file")
        names = [c.strip() for c in header[1:]]
        if header[0].strip().lower() != "date" or not names:
            raise InputError(f"{path}: header must be date,<trend name>,...")
        rows: dict[dt.date, list[float]] = {}
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            day = _parse_date(row[0], line_no)
            if len(row) != len(names) + 1:
                raise InputError(f"line {line_no}: expected {len(names) + 1} columns, got {len(row)}")
            try:
                rows[day] = [float(c) for c in row[1:]]
            except ValueError:
                raise InputError(f"line {line_no}: unparseable value") from None
    if not rows:
        raise InputError(f"{path}: no data rows")
    first, last = min(rows), max(rows)
    calendar = tuple(first + dt.timedelta(days=i) for i in range((last - first).days + 1))
    values = np.zeros((len(names), len(calendar)))
    filled = []
    for j, day in enumerate(calendar):
        if day in rows:
            values[:, j] = rows[day]
        else:
            filled.append(day)
    split = split_index if split_index is not None else _default_split(len(calendar))
    return SeriesFrame(calendar, tuple(names), values, split, tuple(filled))


def reindex(frame: SeriesFrame, calendar: tuple[dt.date, ...], split_index: int) -> SeriesFrame:
    """Project a frame onto another calendar; days it lacks become zero-filled."""
    values = np.zeros((len(frame.categories), len(calendar)))
    filled = []
    for j, day in enumerate(calendar):
        offset = (day - frame.calendar[0]).days
        if 0 <= offset < frame.n_days:
            values[:, j] = frame.values[:, offset]
        else:
            filled.append(day)
    return SeriesFrame(calendar, frame.categories, values, split_index, tuple(filled))
