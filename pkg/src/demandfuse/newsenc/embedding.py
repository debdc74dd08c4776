"""Document vectors for news articles.

The embedding provider is pluggable: anything with ``embed_article`` works.
The default provider is fully deterministic — TF-IDF over a vocabulary
learned from a training corpus, projected to 100 dimensions by a seeded
Gaussian matrix and L2-normalized — so pipelines reproduce bit-for-bit.
A file-backed provider loads externally computed vectors instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, InputError
from ..relevancy.articles import NewsArticle
from ..relevancy.text import content_tokens

EMBED_DIM = 100


@dataclass(frozen=True)
class DocEmbedding:
    article_id: str
    vector: np.ndarray

    def __post_init__(self):
        if self.vector.shape != (EMBED_DIM,):
            raise ContractError(f"embedding must have {EMBED_DIM} entries, got {self.vector.shape}")
        if not np.all(np.isfinite(self.vector)):
            raise ContractError(f"embedding for {self.article_id!r} has non-finite entries")


class TfidfProjectionEmbedder:
    """Deterministic default provider: TF-IDF -> random projection -> unit norm."""

    def __init__(self, dim: int = EMBED_DIM, seed: int = 0):
        self.dim = dim
        self.seed = seed
        self.vocabulary: dict[str, int] = {}
        self.idf: np.ndarray | None = None
        self._projection: np.ndarray | None = None

    def fit(self, texts: list[str]) -> "TfidfProjectionEmbedder":
        doc_freq: dict[str, int] = {}
        for text in texts:
            for token in set(content_tokens(text)):
                doc_freq[token] = doc_freq.get(token, 0) + 1
        vocab = sorted(doc_freq)
        self.vocabulary = {w: i for i, w in enumerate(vocab)}
        n = len(texts)
        self.idf = np.array([math.log((1 + n) / (1 + doc_freq[w])) + 1.0 for w in vocab])
        g = np.random.default_rng(self.seed)
        self._projection = g.normal(scale=1.0 / math.sqrt(self.dim),
                                    size=(len(vocab), self.dim))
        return self

    def embed_text(self, text: str) -> np.ndarray:
        if self.idf is None:
            raise ContractError("embedder must be fit on a corpus before embedding")
        weights = np.zeros(len(self.vocabulary))
        for token in content_tokens(text):
            i = self.vocabulary.get(token)
            if i is not None:
                weights[i] += 1.0
        if not weights.any():
            return np.zeros(self.dim)
        weights *= self.idf
        vec = weights @ self._projection
        norm = np.linalg.norm(vec)
        return vec / norm if norm > 0 else np.zeros(self.dim)

    def embed_article(self, article: NewsArticle) -> DocEmbedding:
        return DocEmbedding(article.id, self.embed_text(article.text))


class FileEmbedder:
    """Provider backed by a JSONL file of {"id", "vector": [100 floats]} lines."""

    def __init__(self, path):
        self.vectors: dict[str, np.ndarray] = {}
        with open(path) as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    vec = np.asarray(obj["vector"], dtype=np.float64)
                except (KeyError, ValueError, TypeError) as exc:
                    raise InputError(f"{path}: line {line_no}: bad embedding record ({exc})") from exc
                if vec.shape != (EMBED_DIM,):
                    raise InputError(f"{path}: line {line_no}: vector must have {EMBED_DIM} entries")
                self.vectors[str(obj["id"])] = vec

    def embed_article(self, article: NewsArticle) -> DocEmbedding:
        vec = self.vectors.get(article.id)
        if vec is None:
            raise InputError(f"no embedding on file for article {article.id!r}")
        return DocEmbedding(article.id, vec)


def embed_document(article: NewsArticle, provider) -> DocEmbedding:
    """Run the configured provider; empty text short-circuits to the zero vector."""
    if not article.text.strip():
        return DocEmbedding(article.id, np.zeros(EMBED_DIM))
    return provider.embed_article(article)
