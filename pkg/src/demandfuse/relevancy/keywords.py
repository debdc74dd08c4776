"""Per-category keyword sets from taxonomy node names and brand lists.

The map file supplies, per product category, the taxonomy subtree node
names and the brand names that were hand-assigned to it.  Node names
explode into 1..3-gram tokens; brand names enter verbatim.  A
document-frequency filter then removes generic keywords, replacing the
manual cleanup pass such lists otherwise need.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigurationError, InputError
from .text import ngrams, stopwords, tokenize

log = logging.getLogger(__name__)

MAX_NGRAM = 3
DEFAULT_MAX_DOC_FREQ = 0.5
DEFAULT_MAX_CATEGORY_SPREAD = 15


@dataclass(frozen=True)
class KeywordSet:
    category: str
    keywords: frozenset[str]
    source_tags: dict[str, str] = field(default_factory=dict)  # keyword -> taxonomy|brand

    def __post_init__(self):
        if not self.keywords:
            raise ConfigurationError(f"category {self.category!r} has no keywords")


def load_keyword_map(path) -> dict[str, dict[str, list[str]]]:
    """{"CATEGORY": {"taxonomy": [...], "brands": [...]}, ...}"""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or not data:
        raise InputError(f"{path}: keyword map must be a non-empty object")
    for cat, entry in data.items():
        if not isinstance(entry, dict) or not ({"taxonomy", "brands"} & entry.keys()):
            raise InputError(f"{path}: category {cat!r} needs 'taxonomy' and/or 'brands' lists")
    return data


def build_keywords(
    keyword_map: dict[str, dict[str, list[str]]],
    corpus_texts: list[str] | None = None,
    max_doc_freq: float = DEFAULT_MAX_DOC_FREQ,
    max_category_spread: int = DEFAULT_MAX_CATEGORY_SPREAD,
) -> list[KeywordSet]:
    """Expand the category map into filtered keyword sets.

    Taxonomy node names contribute every contiguous 1..3-gram of their
    tokens; brand names contribute their full token string when it fits in
    3 tokens (longer brands are skipped and logged).  Keywords made purely
    of stopwords are dropped outright.  When a corpus is given, keywords
    appearing in more than `max_doc_freq` of its documents are dropped as
    generic, as are keywords spread over `max_category_spread`+ categories.
    """
    stop = stopwords()
    raw: dict[str, dict[str, str]] = {}
    for category in sorted(keyword_map):
        entry = keyword_map[category]
        tagged: dict[str, str] = {}
        for node_name in entry.get("taxonomy", []):
            for gram in sorted(ngrams(tokenize(node_name), MAX_NGRAM)):
                if all(tok in stop for tok in gram.split(" ")):
                    continue
                tagged.setdefault(gram, "taxonomy")
        for brand in entry.get("brands", []):
            tokens = tokenize(brand)
            if not tokens:
                continue
            if len(tokens) > MAX_NGRAM:
                log.warning("brand %r for %s exceeds %d tokens; skipped",
                            brand, category, MAX_NGRAM)
                continue
            phrase = " ".join(tokens)
            if all(tok in stop for tok in tokens):
                continue
            tagged[phrase] = "brand"
        raw[category] = tagged

    spread: dict[str, int] = {}
    for tagged in raw.values():
        for kw in tagged:
            spread[kw] = spread.get(kw, 0) + 1
    too_spread = {kw for kw, n in spread.items() if n >= max_category_spread}

    too_frequent: set[str] = set()
    if corpus_texts is not None and corpus_texts:
        all_keywords = set(spread)
        doc_count: dict[str, int] = {kw: 0 for kw in all_keywords}
        for text in corpus_texts:
            grams = ngrams(tokenize(text), MAX_NGRAM)
            for kw in all_keywords & grams:
                doc_count[kw] += 1
        limit = max_doc_freq * len(corpus_texts)
        too_frequent = {kw for kw, n in doc_count.items() if n > limit}

    dropped = too_spread | too_frequent
    sets = []
    for category, tagged in raw.items():
        kept = {kw: tag for kw, tag in tagged.items() if kw not in dropped}
        if not kept:
            raise ConfigurationError(
                f"category {category!r} lost all keywords to the genericity filter"
            )
        sets.append(KeywordSet(category, frozenset(kept), kept))
    return sets
