"""Daily shortlists of the most relevant articles."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .scoring import RelevancyResult

MAX_DAILY_ARTICLES = 5


@dataclass(frozen=True)
class DailyNewsSelection:
    date: dt.date
    article_ids: tuple[str, ...]

    def __post_init__(self):
        if len(self.article_ids) > MAX_DAILY_ARTICLES:
            raise ValueError(f"selection for {self.date} exceeds {MAX_DAILY_ARTICLES} articles")


def select_daily(
    results: list[RelevancyResult],
    limit: int = MAX_DAILY_ARTICLES,
) -> dict[dt.date, DailyNewsSelection]:
    """Top relevant articles per day, by best margin, ids breaking ties.

    Days with no relevant article get an empty selection only if they had
    scored articles at all; absent days are simply absent.
    """
    by_date: dict[dt.date, list[RelevancyResult]] = {}
    for r in results:
        by_date.setdefault(r.date, []).append(r)
    selections: dict[dt.date, DailyNewsSelection] = {}
    for day in sorted(by_date):
        relevant = [r for r in by_date[day] if r.relevant]
        relevant.sort(key=lambda r: (-r.best_margin, r.article_id))
        selections[day] = DailyNewsSelection(day, tuple(r.article_id for r in relevant[:limit]))
    return selections
