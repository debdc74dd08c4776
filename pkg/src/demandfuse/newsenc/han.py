"""The news encoder: attention over a day's articles, batch-normalized day
vectors, a unidirectional GRU across the day sequence, attention over the
GRU outputs, and a multi-label classification head.

The 64-entry output of the second attention stage is the news embedding the
forecaster consumes; the head only exists to give the encoder a training
signal (one rise flag and one dip flag per category).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from ..errors import ContractError, DimensionError, TrainingError
from ..tensor import (
    AdamState,
    BatchNorm,
    Tensor,
    adam_step,
    additive_attention,
    concat,
    glorot_uniform,
    gru_cell,
    no_grad,
)
from ..tensor.checkpoint import load_checkpoint, save_checkpoint
from .embedding import EMBED_DIM

ARTICLE_SLOTS = 5
DAY_SLOTS = 7
EMBEDDING_SIZE = 64
N_OUTPUTS = 40


@dataclass
class HanSpec:
    n_articles: int = ARTICLE_SLOTS
    n_days: int = DAY_SLOTS
    doc_dim: int = EMBED_DIM
    hidden: int = EMBEDDING_SIZE       # GRU width; also the embedding size
    attention_hidden: int = 64
    n_outputs: int = N_OUTPUTS

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "n_articles", "n_days", "doc_dim", "hidden",
            "attention_hidden", "n_outputs")}


@dataclass
class TrainCurves:
    train_loss: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)


class Han:
    """Parameter container plus forward pass; see module docstring for shape."""

    def __init__(self, spec: HanSpec, seed: int = 0):
        self.spec = spec
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        g = self.rng
        d, h, a = spec.doc_dim, spec.hidden, spec.attention_hidden
        self.params: dict[str, Tensor] = {
            "att1.w": glorot_uniform(g, (d, a), d, a),
            "att1.b": Tensor(np.zeros(a), requires_grad=True),
            "att1.v": glorot_uniform(g, (a,), a, 1),
            "gru.w_i": glorot_uniform(g, (d, 3 * h), d, 3 * h),
            "gru.w_h": glorot_uniform(g, (h, 3 * h), h, 3 * h),
            "gru.b_i": Tensor(np.zeros(3 * h), requires_grad=True),
            "gru.b_h": Tensor(np.zeros(3 * h), requires_grad=True),
            "att2.w": glorot_uniform(g, (h, a), h, a),
            "att2.b": Tensor(np.zeros(a), requires_grad=True),
            "att2.v": glorot_uniform(g, (a,), a, 1),
            "head.w": glorot_uniform(g, (h, spec.n_outputs), h, spec.n_outputs),
            "head.b": Tensor(np.zeros(spec.n_outputs), requires_grad=True),
        }
        self.day_norm = BatchNorm(d)
        self.params.update(self.day_norm.params("day_norm"))

    def forward(self, windows: np.ndarray, mask: np.ndarray, training: bool = False
                ) -> tuple[Tensor, Tensor]:
        """windows[batch, articles, days, dim], mask[batch, articles, days]
        -> (embedding [batch, hidden], logits [batch, n_outputs])."""
        s = self.spec
        if windows.ndim != 4 or windows.shape[1:] != (s.n_articles, s.n_days, s.doc_dim):
            raise DimensionError(
                f"window tensor must be [batch, {s.n_articles}, {s.n_days}, {s.doc_dim}], "
                f"got {windows.shape}"
            )
        if mask.shape != windows.shape[:3]:
            raise DimensionError(f"mask shape {mask.shape} must match {windows.shape[:3]}")
        batch = windows.shape[0]
        # fold days into the batch so one attention call pools every day
        per_day = np.ascontiguousarray(windows.transpose(0, 2, 1, 3)).reshape(
            batch * s.n_days, s.n_articles, s.doc_dim)
        per_day_mask = np.ascontiguousarray(mask.transpose(0, 2, 1)).reshape(
            batch * s.n_days, s.n_articles)
        day_vecs, _ = additive_attention(
            Tensor(per_day), self.params["att1.w"], self.params["att1.b"],
            self.params["att1.v"], mask=per_day_mask)
        day_vecs = self.day_norm(day_vecs, training=training, feature_axis=-1)
        day_vecs = day_vecs.reshape(batch, s.n_days, s.doc_dim)

        h = Tensor(np.zeros((batch, s.hidden)))
        outputs = []
        for d in range(s.n_days):
            h = gru_cell(day_vecs[:, d, :], h, self.params["gru.w_i"],
                         self.params["gru.w_h"], self.params["gru.b_i"],
                         self.params["gru.b_h"])
            outputs.append(h.reshape(batch, 1, s.hidden))
        sequence = concat(outputs, axis=1)

        embedding, _ = additive_attention(
            sequence, self.params["att2.w"], self.params["att2.b"], self.params["att2.v"])
        logits = embedding @ self.params["head.w"] + self.params["head.b"]
        return embedding, logits

    def buffers(self) -> dict[str, np.ndarray]:
        return self.day_norm.buffers("day_norm")

    def save(self, path, meta: dict | None = None) -> None:
        arrays = {name: p.data for name, p in self.params.items()}
        arrays.update(self.buffers())
        save_checkpoint(path, arrays, seed=self.seed,
                        meta={"spec": self.spec.to_dict(), **(meta or {})})

    @classmethod
    def load(cls, path) -> "Han":
        arrays, header = load_checkpoint(path)
        spec = HanSpec(**header["meta"]["spec"])
        model = cls(spec, seed=header["seed"] or 0)
        for name, p in model.params.items():
            p.data[...] = arrays[name]
        for name, buf in model.buffers().items():
            buf[...] = arrays[name]
        return model


def multilabel_loss(logits: Tensor, targets: np.ndarray) -> Tensor:
    """Binary cross-entropy from logits, summed over heads, averaged over rows."""
    # softplus(z) - z*y is the stable form of -[y log s(z) + (1-y) log(1-s(z))]
    per_entry = logits.softplus() - logits * targets
    return per_entry.sum(axis=1).mean()


def train_han(
    model: Han,
    windows: np.ndarray,
    mask: np.ndarray,
    targets: np.ndarray,
    epochs: int = 50,
    lr: float = 1e-3,
    batch_size: int = 64,
    weight_decay: float = 1e-4,
    val_fraction: float = 0.1,
) -> TrainCurves:
    """Fit in place on the given (chronologically ordered) samples.

    The chronological tail `val_fraction` is held out for the validation
    curve.  Zero epochs return immediately with empty curves.
    """
    curves = TrainCurves()
    if epochs == 0:
        return curves
    n = len(windows)
    n_val = int(round(n * val_fraction))
    n_train = n - n_val
    if n_train < 1:
        raise ContractError(f"no training rows left after holding out {n_val} of {n}")
    state = AdamState.for_params(model.params, lr=lr, weight_decay=weight_decay)
    for epoch in range(1, epochs + 1):
        order = model.rng.permutation(n_train)
        for lo in range(0, n_train, batch_size):
            idx = order[lo:lo + batch_size]
            _, logits = model.forward(windows[idx], mask[idx], training=True)
            loss = multilabel_loss(logits, targets[idx])
            if not np.isfinite(loss.data):
                raise TrainingError(f"non-finite training loss at epoch {epoch}")
            for p in model.params.values():
                p.zero_grad()
            loss.backward()
            grads = {k: p.grad for k, p in model.params.items()}
            adam_step(model.params, grads, state)
        curves.train_loss.append(evaluate_loss(model, windows[:n_train], mask[:n_train],
                                               targets[:n_train]))
        if n_val:
            curves.val_loss.append(evaluate_loss(model, windows[n_train:], mask[n_train:],
                                                 targets[n_train:]))
    return curves


def evaluate_loss(model: Han, windows, mask, targets, batch_size: int = 256) -> float:
    total, rows = 0.0, 0
    with no_grad():
        for lo in range(0, len(windows), batch_size):
            hi = min(lo + batch_size, len(windows))
            _, logits = model.forward(windows[lo:hi], mask[lo:hi], training=False)
            loss = multilabel_loss(logits, targets[lo:hi])
            total += float(loss.data) * (hi - lo)
            rows += hi - lo
    return total / max(rows, 1)


def encode_news(model: Han, windows: np.ndarray, mask: np.ndarray,
                batch_size: int = 256) -> np.ndarray:
    """Eval-mode embeddings for a batch of windows: [n, hidden]."""
    chunks = []
    with no_grad():
        for lo in range(0, len(windows), batch_size):
            hi = min(lo + batch_size, len(windows))
            embedding, _ = model.forward(windows[lo:hi], mask[lo:hi], training=False)
            chunks.append(embedding.data)
    return np.concatenate(chunks, axis=0) if chunks else np.empty((0, model.spec.hidden))


def null_embedding(model: Han) -> np.ndarray:
    """The embedding an all-empty news history produces (constant per state)."""
    s = model.spec
    windows = np.zeros((1, s.n_articles, s.n_days, s.doc_dim))
    mask = np.zeros((1, s.n_articles, s.n_days))
    return encode_news(model, windows, mask)[0]
