"""Independent brute-force oracles used to cross-check pipeline outputs.

Everything here is written against the documented formulas only, not
against the package implementations: matching re-derives phrase containment
by scanning token tuples, ranking re-sorts from scratch, and the word-score
oracle builds a dense transition matrix.
"""

import re

import numpy as np

_TOKEN = re.compile(r"[a-z0-9]+")


def oracle_tokens(text):
    return _TOKEN.findall(text.lower())


def oracle_phrase_in(tokens, phrase):
    needle = tuple(phrase.split(" "))
    grams = {tuple(tokens[i:i + len(needle)]) for i in range(len(tokens) - len(needle) + 1)}
    return needle in grams


def oracle_score(article_text, keyword_sets, word_scores):
    """Term-by-term evaluation of the combined relevancy score.

    `keyword_sets` is a dict category -> iterable of keyword phrases.
    Returns a dict category -> score.  The kept list is the top
    floor(l/2) keywords (minimum one) by descending importance, ties
    broken lexicographically; keyword importance is the mean of its
    scored tokens; m counts categories whose sets contain the keyword.
    """
    tokens = oracle_tokens(article_text)
    m = {}
    for kws in keyword_sets.values():
        for kw in kws:
            m[kw] = m.get(kw, 0) + 1
    scores = {}
    for category, kws in keyword_sets.items():
        matched = []
        for kw in kws:
            if not oracle_phrase_in(tokens, kw):
                continue
            token_scores = [word_scores[t] for t in kw.split(" ") if t in word_scores]
            if not token_scores:
                continue
            matched.append((kw, sum(token_scores) / len(token_scores)))
        if not matched:
            scores[category] = 0.0
            continue
        ordered = sorted(matched, key=lambda item: (-item[1], item[0]))
        kept = ordered[: max(1, len(ordered) // 2)]
        total = 0.0
        for rank, (kw, r) in enumerate(kept, start=1):
            total += (1.0 / m[kw]) * r * (1.0 / rank)
        scores[category] = total
    return scores


def oracle_textrank(text, window=4, damping=0.85, iterations=500):
    """Dense power iteration on the same co-occurrence graph definition."""
    stop = _load_stopwords()
    tokens = [t for t in oracle_tokens(text) if t not in stop]
    vocab = sorted(set(tokens))
    n = len(vocab)
    if n == 0:
        return {}
    idx = {w: i for i, w in enumerate(vocab)}
    adj = np.zeros((n, n))
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + window, len(tokens))):
            a, b = idx[tokens[i]], idx[tokens[j]]
            if a != b:
                adj[a, b] = adj[b, a] = 1.0
    deg = adj.sum(axis=1)
    col_norm = np.divide(adj, np.where(deg > 0, deg, 1.0)[None, :])
    s = np.full(n, 1.0 / n)
    for _ in range(iterations):
        s = (1.0 - damping) / n + damping * (col_norm @ s)
    return {w: float(s[idx[w]]) for w in vocab}


def _load_stopwords():
    from importlib import resources

    text = resources.files("demandfuse.relevancy").joinpath("data/stopwords.txt").read_text()
    return {ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")}


def oracle_percentile_linear(values, q):
    """Linear-interpolation percentile, computed from the sort definition."""
    v = sorted(float(x) for x in values)
    if len(v) == 1:
        return v[0]
    pos = (len(v) - 1) * (q / 100.0)
    lo = int(np.floor(pos))
    hi = min(lo + 1, len(v) - 1)
    frac = pos - lo
    return v[lo] * (1.0 - frac) + v[hi] * frac


def oracle_smape(actual, forecast):
    total = 0.0
    for a, f in zip(actual, forecast):
        denom = abs(a) + abs(f)
        total += 0.0 if denom == 0 else 2.0 * abs(f - a) / denom
    return 100.0 * total / len(actual)
