"""Article-to-category relevancy scores.

For an article and a category, the matched keywords are the category's
keywords whose token phrase occurs in the article.  The top half by word
importance (at least one) contribute

    sum_k  (1/m_k) * r_k * (1/rank_k)

where m_k counts how many categories carry the keyword, r_k is its
importance in this article, and rank_k is its 1-based position in the
kept list (descending importance, ties lexicographic).  The per-category
margin is the score minus that category's calibrated threshold; an article
is relevant when any margin is positive, and relevant articles get a
softmax distribution over all category margins.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .articles import NewsArticle
from .keywords import KeywordSet
from .text import contains_phrase, tokenize
from .textrank import textrank


@dataclass(frozen=True)
class RelevancyResult:
    article_id: str
    date: dt.date
    categories: tuple[str, ...]
    scores: np.ndarray        # [n_categories]
    margins: np.ndarray       # scores - thresholds
    relevant: bool
    distribution: np.ndarray | None  # softmax over margins, only when relevant

    @property
    def best_margin(self) -> float:
        return float(self.margins.max())

    def to_record(self) -> dict:
        rec = {
            "id": self.article_id,
            "date": self.date.isoformat(),
            "relevant": self.relevant,
            "scores": {c: float(s) for c, s in zip(self.categories, self.scores)},
            "margins": {c: float(m) for c, m in zip(self.categories, self.margins)},
            "distribution": None,
        }
        if self.distribution is not None:
            rec["distribution"] = {c: float(p) for c, p in zip(self.categories, self.distribution)}
        return rec


def keyword_importance(word_scores: dict[str, float], keyword: str) -> float | None:
    """Mean importance of the keyword's scored tokens; None if none scored."""
    scored = [word_scores[t] for t in keyword.split(" ") if t in word_scores]
    if not scored:
        return None
    return float(sum(scored) / len(scored))


def category_membership_counts(keyword_sets: list[KeywordSet]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for ks in keyword_sets:
        for kw in ks.keywords:
            counts[kw] = counts.get(kw, 0) + 1
    return counts


def match_keywords(article_tokens: list[str], keyword_set: KeywordSet) -> list[str]:
    return [kw for kw in sorted(keyword_set.keywords)
            if contains_phrase(article_tokens, kw)]


def raw_scores(
    article: NewsArticle,
    keyword_sets: list[KeywordSet],
    membership: dict[str, int] | None = None,
    word_scores: dict[str, float] | None = None,
) -> np.ndarray:
    """Per-category combined scores for one article (thresholds not applied)."""
    if membership is None:
        membership = category_membership_counts(keyword_sets)
    if word_scores is None:
        word_scores = textrank(article.text)
    tokens = tokenize(article.text)
    out = np.zeros(len(keyword_sets))
    for i, ks in enumerate(keyword_sets):
        matched = []
        for kw in match_keywords(tokens, ks):
            r = keyword_importance(word_scores, kw)
            if r is not None:
                matched.append((kw, r))
        if not matched:
            continue
        matched.sort(key=lambda item: (-item[1], item[0]))
        keep = max(1, len(matched) // 2)
        total = 0.0
        for rank, (kw, r) in enumerate(matched[:keep], start=1):
            total += (1.0 / membership[kw]) * r * (1.0 / rank)
        out[i] = total
    return out


def margins_to_distribution(margins: np.ndarray) -> np.ndarray:
    shifted = margins - margins.max()
    e = np.exp(shifted)
    return e / e.sum()


def score_article(
    article: NewsArticle,
    keyword_sets: list[KeywordSet],
    thresholds: dict[str, float] | None = None,
    membership: dict[str, int] | None = None,
) -> RelevancyResult:
    """Full scoring of one article: scores, margins, relevance, distribution.

    Missing thresholds are treated as zero, which marks every article with
    a positive score relevant; calibrate first for the filtering behavior.
    """
    categories = tuple(ks.category for ks in keyword_sets)
    scores = raw_scores(article, keyword_sets, membership)
    t = np.array([(thresholds or {}).get(c, 0.0) for c in categories])
    margins = scores - t
    relevant = bool((margins > 0).any())
    distribution = margins_to_distribution(margins) if relevant else None
    return RelevancyResult(article.id, article.date, categories, scores,
                           margins, relevant, distribution)


def score_corpus(
    articles: list[NewsArticle],
    keyword_sets: list[KeywordSet],
    thresholds: dict[str, float] | None = None,
) -> list[RelevancyResult]:
    membership = category_membership_counts(keyword_sets)
    return [score_article(a, keyword_sets, thresholds, membership) for a in articles]
