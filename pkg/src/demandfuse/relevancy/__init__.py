from .articles import NewsArticle, read_jsonl, read_news_jsonl, write_jsonl, write_news_jsonl
from .keywords import KeywordSet, build_keywords, load_keyword_map
from .scoring import (
    RelevancyResult,
    category_membership_counts,
    keyword_importance,
    margins_to_distribution,
    match_keywords,
    raw_scores,
    score_article,
    score_corpus,
)
from .selection import MAX_DAILY_ARTICLES, DailyNewsSelection, select_daily
from .text import content_tokens, contains_phrase, ngrams, stopwords, tokenize
from .textrank import textrank
from .thresholds import calibrate_thresholds, load_thresholds, save_thresholds

__all__ = [
    "NewsArticle",
    "read_jsonl",
    "read_news_jsonl",
    "write_jsonl",
    "write_news_jsonl",
    "KeywordSet",
    "build_keywords",
    "load_keyword_map",
    "RelevancyResult",
    "category_membership_counts",
    "keyword_importance",
    "margins_to_distribution",
    "match_keywords",
    "raw_scores",
    "score_article",
    "score_corpus",
    "MAX_DAILY_ARTICLES",
    "DailyNewsSelection",
    "select_daily",
    "content_tokens",
    "contains_phrase",
    "ngrams",
    "stopwords",
    "tokenize",
    "textrank",
    "calibrate_thresholds",
    "load_thresholds",
    "save_thresholds",
]
