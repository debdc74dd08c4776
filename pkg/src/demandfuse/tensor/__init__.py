from .engine import Tensor, Tape, concat, no_grad, rng
from .nn import (
    BatchNorm,
    additive_attention,
    average_pool_temporal,
    conv1d,
    dense,
    dropout,
    glorot_uniform,
    gru_cell,
    leaky_relu,
    masked_softmax,
    relu,
    softmax,
)
from .optim import AdamState, adam_step
from .checkpoint import load_checkpoint, save_checkpoint

__all__ = [
    "Tensor",
    "Tape",
    "concat",
    "no_grad",
    "rng",
    "BatchNorm",
    "additive_attention",
    "average_pool_temporal",
    "conv1d",
    "dense",
    "dropout",
    "glorot_uniform",
    "gru_cell",
    "leaky_relu",
    "masked_softmax",
    "relu",
    "softmax",
    "AdamState",
    "adam_step",
    "load_checkpoint",
    "save_checkpoint",
]
