"""The multimodal forecasting network.

Two parallel convolution stacks read the sales and trend windows; each
stack runs four same-padded Conv1D branches (kernel widths 1 through 4),
globally average-pools each branch, applies leaky ReLU, batch norm, and
dropout, and concatenates the four branch outputs.  A one-node ReLU gate
squeezes the date features to a scalar that joins the two stack outputs
(mid fusion).  That vector, reshaped to a one-channel sequence, feeds a
third stack of the same structure, whose output joins the news gate's
scalar (late fusion) before a single linear output unit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError, ContractError
from ..ingest.windows import WindowBatch
from ..tensor import BatchNorm, Tensor, concat, conv1d, dropout, glorot_uniform, no_grad
from ..tensor.checkpoint import load_checkpoint, save_checkpoint

KERNEL_SIZES = (1, 2, 3, 4)


@dataclass
class ModelSpec:
    sales_window: int = 30
    trend_window: int = 30
    news_window: int = 7
    kernel_sizes: tuple = KERNEL_SIZES
    filters: int = 32
    dropout_keep: float = 0.8
    l2: float = 1e-4
    has_trend: bool = True
    date_dim: int = 8
    news_dim: int = 64
    leaky_slope: float = 0.01
    lr: float = 1e-3

    def __post_init__(self):
        self.kernel_sizes = tuple(self.kernel_sizes)
        if self.filters < 1:
            raise ConfigurationError("filters must be positive")
        if not self.kernel_sizes:
            raise ConfigurationError("kernel_sizes must be non-empty")
        if not 0.0 < self.dropout_keep <= 1.0:
            raise ConfigurationError("dropout_keep must be in (0, 1]")

    @property
    def stack_width(self) -> int:
        return self.filters * len(self.kernel_sizes)

    @property
    def mid_width(self) -> int:
        return self.stack_width * (2 if self.has_trend else 1) + 1

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in (
            "sales_window", "trend_window", "news_window", "filters",
            "dropout_keep", "l2", "has_trend", "date_dim", "news_dim",
            "leaky_slope", "lr")}
        d["kernel_sizes"] = list(self.kernel_sizes)
        return d


@dataclass
class ModelInputs:
    """Plain arrays the network consumes; rows are aligned across fields."""

    sales: np.ndarray              # [n, w_s]
    trend: np.ndarray | None       # [n, w_g]
    dates: np.ndarray              # [n, 8]
    news: np.ndarray               # [n, 64]
    targets: np.ndarray            # [n] normalized

    def __len__(self):
        return len(self.targets)

    def take(self, idx) -> "ModelInputs":
        return ModelInputs(
            self.sales[idx],
            self.trend[idx] if self.trend is not None else None,
            self.dates[idx], self.news[idx], self.targets[idx],
        )

    def slice(self, lo, hi) -> "ModelInputs":
        return self.take(np.arange(lo, hi))

    @classmethod
    def from_window_batch(cls, batch: WindowBatch,
                          news_by_day: np.ndarray | None = None) -> "ModelInputs":
        news = batch.news
        if news_by_day is not None:
            news = news_by_day[batch.target_indices]
        return cls(batch.sales, batch.trend, batch.dates, news, batch.targets_norm)


class ForecastModel:
    """Parameters plus forward pass for one product category."""

    def __init__(self, spec: ModelSpec, seed: int = 0):
        self.spec = spec
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.params: dict[str, Tensor] = {}
        self.norms: dict[str, BatchNorm] = {}
        self._build_stack("sales")
        if spec.has_trend:
            self._build_stack("trend")
        self._build_stack("mid")
        self._build_gate("date_gate", spec.date_dim)
        self._build_gate("news_gate", spec.news_dim)
        out_width = spec.stack_width + 1
        self.params["out.w"] = glorot_uniform(self.rng, (out_width, 1), out_width, 1)
        self.params["out.b"] = Tensor(np.zeros(1), requires_grad=True)

    def _build_stack(self, name: str) -> None:
        f = self.spec.filters
        for k in self.spec.kernel_sizes:
            prefix = f"{name}.k{k}"
            self.params[f"{prefix}.kernel"] = glorot_uniform(
                self.rng, (f, 1, k), fan_in=k, fan_out=f * k)
            self.params[f"{prefix}.bias"] = Tensor(np.zeros(f), requires_grad=True)
            norm = BatchNorm(f)
            self.norms[prefix] = norm
            self.params.update(norm.params(f"{prefix}.norm"))

    def _build_gate(self, name: str, width: int) -> None:
        self.params[f"{name}.w"] = glorot_uniform(self.rng, (width, 1), width, 1)
        self.params[f"{name}.b"] = Tensor(np.zeros(1), requires_grad=True)

    def _stack(self, name: str, x: Tensor, training: bool) -> Tensor:
        outs = []
        for k in self.spec.kernel_sizes:
            prefix = f"{name}.k{k}"
            y = conv1d(x, self.params[f"{prefix}.kernel"], self.params[f"{prefix}.bias"])
            y = y.mean(axis=2)
            y = y.leaky_relu(self.spec.leaky_slope)
            y = self.norms[prefix](y, training=training, feature_axis=1)
            y = dropout(y, self.spec.dropout_keep, training, self.rng)
            outs.append(y)
        return concat(outs, axis=1)

    def _gate(self, name: str, x: Tensor) -> Tensor:
        return (x @ self.params[f"{name}.w"] + self.params[f"{name}.b"]).relu()

    def forward(self, inputs: ModelInputs, training: bool = False) -> Tensor:
        """-> predictions [n] in normalized units."""
        spec = self.spec
        n = len(inputs)
        if inputs.sales.shape != (n, spec.sales_window):
            raise ContractError(
                f"sales input must be [n, {spec.sales_window}], got {inputs.sales.shape}")
        if spec.has_trend and inputs.trend is None:
            raise ContractError("model was built with a trend stack but got no trend input")
        parts = [self._stack("sales", Tensor(inputs.sales[:, None, :]), training)]
        if spec.has_trend:
            if inputs.trend.shape != (n, spec.trend_window):
                raise ContractError(
                    f"trend input must be [n, {spec.trend_window}], got {inputs.trend.shape}")
            parts.append(self._stack("trend", Tensor(inputs.trend[:, None, :]), training))
        parts.append(self._gate("date_gate", Tensor(inputs.dates)))
        mid = concat(parts, axis=1)
        fused = self._stack("mid", mid.reshape(n, 1, spec.mid_width), training)
        late = concat([fused, self._gate("news_gate", Tensor(inputs.news))], axis=1)
        out = late @ self.params["out.w"] + self.params["out.b"]
        return out.reshape(n)

    def predict(self, inputs: ModelInputs, batch_size: int = 512) -> np.ndarray:
        """Eval-mode predictions as a plain array."""
        chunks = []
        with no_grad():
            for lo in range(0, len(inputs), batch_size):
                chunks.append(self.forward(inputs.slice(lo, min(lo + batch_size, len(inputs)))).data)
        return np.concatenate(chunks) if chunks else np.empty(0)

    # -- state handling -----------------------------------------------------

    def parameter_count(self) -> int:
        return sum(p.size for p in self.params.values())

    def buffers(self) -> dict[str, np.ndarray]:
        out: dict[str, np.ndarray] = {}
        for prefix, norm in self.norms.items():
            out.update(norm.buffers(f"{prefix}.norm"))
        return out

    def state_arrays(self) -> dict[str, np.ndarray]:
        arrays = {name: p.data for name, p in self.params.items()}
        arrays.update(self.buffers())
        return arrays

    def snapshot(self) -> dict[str, np.ndarray]:
        return {name: a.copy() for name, a in self.state_arrays().items()}

    def restore(self, snap: dict[str, np.ndarray]) -> None:
        for name, a in self.state_arrays().items():
            a[...] = snap[name]

    def save(self, path, meta: dict | None = None) -> None:
        save_checkpoint(path, self.state_arrays(), seed=self.seed,
                        meta={"spec": self.spec.to_dict(), **(meta or {})})

    @classmethod
    def load(cls, path) -> "ForecastModel":
        arrays, header = load_checkpoint(path)
        spec_dict = dict(header["meta"]["spec"])
        spec_dict["kernel_sizes"] = tuple(spec_dict["kernel_sizes"])
        model = cls(ModelSpec(**spec_dict), seed=header["seed"] or 0)
        model.restore(arrays)
        return model


def build_model(spec: ModelSpec, seed: int = 0) -> ForecastModel:
    return ForecastModel(spec, seed)


def write_sidecar(path, spec: ModelSpec, records: list) -> None:
    """The JSON sidecar stored next to a checkpoint: spec + gate trace."""
    doc = {"spec": spec.to_dict(), "gate_trace": [r.to_dict() for r in records]}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
