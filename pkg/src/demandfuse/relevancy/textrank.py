"""Word importance by stationary ranking over a co-occurrence graph.

Content words (stopwords removed) within `window` positions of each other
share an undirected, unweighted edge.  Scores iterate

    s[v] = (1 - d)/N + d * sum_{u ~ v} s[u] / deg(u)

until the largest change drops below `tol`.  Isolated words keep the
teleport base (1 - d)/N; scores are returned raw, without normalization.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from .text import content_tokens

DEFAULT_WINDOW = 4
DEFAULT_DAMPING = 0.85
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 200


def textrank(
    text: str,
    window: int = DEFAULT_WINDOW,
    damping: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> dict[str, float]:
    """Importance score per distinct content word of `text`."""
    if window < 2:
        raise ParameterError(f"window must be >= 2, got {window}")
    if not 0.0 < damping < 1.0:
        raise ParameterError(f"damping must be in (0, 1), got {damping}")
    tokens = content_tokens(text)
    if not tokens:
        return {}
    vocab = sorted(set(tokens))
    index = {w: i for i, w in enumerate(vocab)}
    n = len(vocab)

    pairs: set[tuple[int, int]] = set()
    for i, tok in enumerate(tokens):
        a = index[tok]
        for j in range(i + 1, min(i + window, len(tokens))):
            b = index[tokens[j]]
            if a != b:
                pairs.add((min(a, b), max(a, b)))
    if pairs:
        edge = np.array(sorted(pairs), dtype=int)
        src = np.concatenate([edge[:, 0], edge[:, 1]])
        dst = np.concatenate([edge[:, 1], edge[:, 0]])
        degree = np.bincount(src, minlength=n).astype(float)
    else:
        src = dst = np.empty(0, dtype=int)
        degree = np.zeros(n)

    base = (1.0 - damping) / n
    scores = np.full(n, 1.0 / n)
    safe_degree = np.where(degree > 0, degree, 1.0)
    for _ in range(max_iter):
        contrib = scores[src] / safe_degree[src]
        new = base + damping * np.bincount(dst, weights=contrib, minlength=n)
        if np.max(np.abs(new - scores)) < tol:
            scores = new
            break
        scores = new
    return {w: float(scores[index[w]]) for w in vocab}
