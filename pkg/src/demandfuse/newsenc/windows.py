"""Assemble per-day article vectors into encoder input windows.

A window for target day t covers the 7 days before t (oldest first along
the day axis).  Article slots beyond a day's selection, and articles whose
vector is all zero (empty documents), carry mask 0.
"""

from __future__ import annotations

import datetime as dt

import numpy as np

from ..relevancy.selection import DailyNewsSelection
from .embedding import EMBED_DIM
from .han import ARTICLE_SLOTS, DAY_SLOTS


def build_news_windows(
    target_days: list[dt.date],
    selections: dict[dt.date, DailyNewsSelection],
    vectors: dict[str, np.ndarray],
    n_articles: int = ARTICLE_SLOTS,
    n_days: int = DAY_SLOTS,
    dim: int = EMBED_DIM,
) -> tuple[np.ndarray, np.ndarray]:
    """-> (windows [n, articles, days, dim], mask [n, articles, days])."""
    windows = np.zeros((len(target_days), n_articles, n_days, dim))
    mask = np.zeros((len(target_days), n_articles, n_days))
    for row, target in enumerate(target_days):
        for offset in range(n_days):
            day = target - dt.timedelta(days=n_days - offset)
            selection = selections.get(day)
            if selection is None:
                continue
            for slot, article_id in enumerate(selection.article_ids[:n_articles]):
                vec = vectors.get(article_id)
                if vec is None or not vec.any():
                    continue
                windows[row, slot, offset, :] = vec
                mask[row, slot, offset] = 1.0
    return windows, mask
