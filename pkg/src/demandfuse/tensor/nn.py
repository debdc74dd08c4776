"""Differentiable layer primitives built on the tensor engine.

Conventions: batches lead, channels follow, time is last for 1-d sequences
(``[batch, channels, length]``).  Masks and dropout masks are constants in
the gradient sense; batch-norm running statistics live outside the graph.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError, ParameterError
from .engine import Tensor, _make, _PENDING, concat, grad_enabled

__all__ = [
    "glorot_uniform",
    "dense",
    "conv1d",
    "average_pool_temporal",
    "softmax",
    "masked_softmax",
    "dropout",
    "relu",
    "leaky_relu",
    "gru_cell",
    "additive_attention",
    "BatchNorm",
    "concat",
]


def glorot_uniform(rng: np.random.Generator, shape, fan_in: int, fan_out: int) -> Tensor:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return Tensor(rng.uniform(-limit, limit, size=shape), requires_grad=True)


def dense(x: Tensor, w: Tensor, b: Tensor | None = None) -> Tensor:
    """x[batch, in] @ w[in, out] (+ b[out])."""
    out = x @ w
    if b is not None:
        out = out + b
    return out


def conv1d(x: Tensor, kernel: Tensor, bias: Tensor) -> Tensor:
    """Same-padded 1-d convolution.

    x[batch, c_in, length], kernel[c_out, c_in, k], bias[c_out] ->
    [batch, c_out, length].  Padding is symmetric, left-biased when k is
    even, so output length always equals input length.
    """
    if x.ndim != 3:
        raise DimensionError(f"conv1d input must be 3-d [batch, c_in, length], got {x.ndim}-d")
    if kernel.ndim != 3:
        raise DimensionError(f"conv1d kernel must be 3-d [c_out, c_in, k], got {kernel.ndim}-d")
    c_out, c_in, k = kernel.shape
    if k not in (1, 2, 3, 4):
        raise ParameterError(f"kernel width must be in 1..4, got {k}")
    if x.shape[1] != c_in:
        raise DimensionError(
            f"channel axis mismatch: input has {x.shape[1]} channels (axis 1), "
            f"kernel expects {c_in}"
        )
    if bias.shape != (c_out,):
        raise DimensionError(
            f"bias axis 0 must have {c_out} entries to match kernel, got {bias.shape}"
        )
    length = x.shape[2]
    pad_left, pad_right = k // 2, (k - 1) // 2
    xp = np.pad(x.data, ((0, 0), (0, 0), (pad_left, pad_right)))
    # cols[b, c, t, j] = padded input at offset j of window ending at position t
    cols = np.stack([xp[:, :, j:j + length] for j in range(k)], axis=-1)
    data = np.einsum("bctj,ocj->bot", cols, kernel.data) + bias.data[None, :, None]
    out = _make(data, (x, kernel, bias))
    if out._backward is _PENDING:
        def backward():
            g = out.grad
            kernel._accumulate(np.einsum("bot,bctj->ocj", g, cols))
            bias._accumulate(g.sum(axis=(0, 2)))
            if x.requires_grad:
                gxp = np.zeros_like(xp)
                for j in range(k):
                    gxp[:, :, j:j + length] += np.einsum("bot,oc->bct", g, kernel.data[:, :, j])
                x._accumulate(gxp[:, :, pad_left:pad_left + length])
        out._backward = backward
    return out


def average_pool_temporal(x: Tensor) -> Tensor:
    """Global mean over the temporal axis: [batch, channels, length] -> [batch, channels]."""
    if x.ndim != 3:
        raise DimensionError(f"average_pool_temporal needs a 3-d input, got {x.ndim}-d")
    return x.mean(axis=2)


def softmax(x: Tensor, axis: int = -1) -> Tensor:
    shift = x - np.max(x.data, axis=axis, keepdims=True)  # constant shift
    e = shift.exp()
    return e / e.sum(axis=axis, keepdims=True)


def masked_softmax(energies: Tensor, mask: np.ndarray, axis: int = -1) -> Tensor:
    """Softmax restricted to positions where mask != 0.

    Masked positions get weight exactly 0.  Rows with no unmasked position
    come out all-zero.  The mask is a constant.
    """
    mask = np.asarray(mask, dtype=np.float64)
    if mask.shape != energies.shape:
        raise DimensionError(
            f"mask shape {mask.shape} must match energies shape {energies.shape}"
        )
    e = energies.data
    finite_max = np.where(mask > 0, e, -np.inf).max(axis=axis, keepdims=True)
    finite_max = np.where(np.isfinite(finite_max), finite_max, 0.0)
    z = np.exp(np.where(mask > 0, e - finite_max, -np.inf))
    denom = z.sum(axis=axis, keepdims=True)
    weights = z / np.where(denom == 0.0, 1.0, denom)
    out = _make(weights, (energies,))
    if out._backward is _PENDING:
        def backward():
            g = out.grad
            inner = (g * weights).sum(axis=axis, keepdims=True)
            energies._accumulate(weights * (g - inner))
        out._backward = backward
    return out


def dropout(x: Tensor, keep_prob: float, training: bool, rng: np.random.Generator) -> Tensor:
    """Inverted dropout; identity in eval mode.  The mask is a constant."""
    if not 0.0 <= keep_prob <= 1.0:
        raise ParameterError(f"keep probability must be in [0, 1], got {keep_prob}")
    if not training or keep_prob == 1.0:
        return x
    if keep_prob == 0.0:
        return x * np.zeros(x.shape)
    mask = (rng.random(x.shape) < keep_prob) / keep_prob
    return x * mask


def relu(x: Tensor) -> Tensor:
    return x.relu()


def leaky_relu(x: Tensor, slope: float = 0.01) -> Tensor:
    return x.leaky_relu(slope)


def gru_cell(x: Tensor, h: Tensor, w_i: Tensor, w_h: Tensor, b_i: Tensor, b_h: Tensor) -> Tensor:
    """One GRU step.  Gate order in the packed weights is (reset, update, candidate).

    x[batch, in], h[batch, hidden], w_i[in, 3*hidden], w_h[hidden, 3*hidden],
    b_i[3*hidden], b_h[3*hidden] -> new hidden [batch, hidden].
    """
    hidden = h.shape[1]
    if w_i.shape[1] != 3 * hidden or w_h.shape != (hidden, 3 * hidden):
        raise DimensionError(
            f"packed GRU weights must have 3*hidden={3 * hidden} on axis 1, "
            f"got w_i {w_i.shape}, w_h {w_h.shape}"
        )
    gi = x @ w_i + b_i
    gh = h @ w_h + b_h
    r = (gi[:, :hidden] + gh[:, :hidden]).sigmoid()
    z = (gi[:, hidden:2 * hidden] + gh[:, hidden:2 * hidden]).sigmoid()
    n = (gi[:, 2 * hidden:] + r * gh[:, 2 * hidden:]).tanh()
    return (1.0 - z) * n + z * h


def additive_attention(
    values: Tensor,
    w: Tensor,
    b: Tensor,
    v: Tensor,
    mask: np.ndarray | None = None,
) -> tuple[Tensor, Tensor]:
    """Single-hidden-layer tanh attention pooling over axis 1.

    values[batch, slots, dim] -> (pooled [batch, dim], weights [batch, slots]).
    With a mask, absent slots get weight exactly 0.
    """
    if values.ndim != 3:
        raise DimensionError(f"attention values must be 3-d, got {values.ndim}-d")
    batch, slots, dim = values.shape
    hidden = w.shape[1]
    u = (values.reshape(batch * slots, dim) @ w + b).tanh()
    energies = (u @ v.reshape(hidden, 1)).reshape(batch, slots)
    if mask is None:
        weights = softmax(energies, axis=1)
    else:
        weights = masked_softmax(energies, mask, axis=1)
    pooled = (weights.reshape(batch, slots, 1) * values).sum(axis=1)
    return pooled, weights


class BatchNorm:
    """Batch normalization over every axis except the feature axis.

    Train mode normalizes with batch statistics and updates the running
    buffers; eval mode normalizes with the running buffers only.
    """

    def __init__(self, channels: int, momentum: float = 0.9, eps: float = 1e-5):
        if not 0.0 <= momentum < 1.0:
            raise ParameterError(f"momentum must be in [0, 1), got {momentum}")
        self.channels = channels
        self.momentum = momentum
        self.eps = eps
        self.gamma = Tensor(np.ones(channels), requires_grad=True)
        self.beta = Tensor(np.zeros(channels), requires_grad=True)
        self.running_mean = np.zeros(channels)
        self.running_var = np.ones(channels)

    def __call__(self, x: Tensor, training: bool, feature_axis: int = -1) -> Tensor:
        axis = feature_axis % x.ndim
        if x.shape[axis] != self.channels:
            raise DimensionError(
                f"feature axis {axis} has size {x.shape[axis]}, layer expects {self.channels}"
            )
        bshape = [1] * x.ndim
        bshape[axis] = self.channels
        reduce_axes = tuple(i for i in range(x.ndim) if i != axis)
        gamma = self.gamma.reshape(bshape)
        beta = self.beta.reshape(bshape)
        if training:
            mu = x.mean(axis=reduce_axes, keepdims=True)
            var = ((x - mu) * (x - mu)).mean(axis=reduce_axes, keepdims=True)
            xhat = (x - mu) / (var + self.eps).sqrt()
            self.running_mean[:] = (
                self.momentum * self.running_mean + (1 - self.momentum) * mu.data.reshape(-1)
            )
            self.running_var[:] = (
                self.momentum * self.running_var + (1 - self.momentum) * var.data.reshape(-1)
            )
        else:
            rm = self.running_mean.reshape(bshape)
            rv = self.running_var.reshape(bshape)
            xhat = (x - rm) / np.sqrt(rv + self.eps)
        return gamma * xhat + beta

    def params(self, prefix: str) -> dict[str, Tensor]:
        return {f"{prefix}.gamma": self.gamma, f"{prefix}.beta": self.beta}

    def buffers(self, prefix: str) -> dict[str, np.ndarray]:
        return {
            f"{prefix}.running_mean": self.running_mean,
            f"{prefix}.running_var": self.running_var,
        }
