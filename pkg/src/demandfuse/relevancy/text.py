"""Tokenization shared by keyword generation, matching, and word ranking."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    text = resources.files("demandfuse.relevancy").joinpath("data/stopwords.txt").read_text()
    return frozenset(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on non-alphanumerics; stopwords kept."""
    return _TOKEN_RE.findall(text.lower())


def content_tokens(text: str) -> list[str]:
    """Tokens with stopwords removed (order preserved)."""
    stop = stopwords()
    return [t for t in tokenize(text) if t not in stop]


def ngrams(tokens: list[str], max_n: int = 3) -> set[str]:
    """All contiguous 1..max_n-grams as space-joined strings."""
    out: set[str] = set()
    for n in range(1, max_n + 1):
        for i in range(len(tokens) - n + 1):
            out.add(" ".join(tokens[i:i + n]))
    return out


def contains_phrase(tokens: list[str], phrase: str) -> bool:
    """True if the phrase's tokens appear contiguously in `tokens`."""
    needle = phrase.split(" ")
    n = len(needle)
    if n == 0 or n > len(tokens):
        return False
    if n == 1:
        return needle[0] in tokens
    first = needle[0]
    for i in range(len(tokens) - n + 1):
        if tokens[i] == first and tokens[i:i + n] == needle:
            return True
    return False
