"""Adam optimizer; the L2 penalty folds into the raw gradient before the moments."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError
from .engine import Tensor


@dataclass
class AdamState:
    """Optimizer state for one named parameter set."""

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 1e-4
    step: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def for_params(cls, params: dict[str, Tensor], **kwargs) -> "AdamState":
        state = cls(**kwargs)
        for name, p in params.items():
            state.m[name] = np.zeros_like(p.data)
            state.v[name] = np.zeros_like(p.data)
        return state

    def snapshot(self) -> dict:
        return {
            "step": self.step,
            "m": {k: v.copy() for k, v in self.m.items()},
            "v": {k: v.copy() for k, v in self.v.items()},
        }

    def restore(self, snap: dict) -> None:
        self.step = snap["step"]
        for k in self.m:
            self.m[k][...] = snap["m"][k]
            self.v[k][...] = snap["v"][k]


def adam_step(params: dict[str, Tensor], grads: dict[str, np.ndarray], state: AdamState) -> None:
    """One bias-corrected Adam update, in place.

    The L2 term enters the raw gradient (decay * param) before the moment
    update.  Parameters without a gradient this step still see moment decay,
    plus the L2 pull when decay > 0.
    """
    state.step += 1
    t = state.step
    correct1 = 1.0 - state.beta1 ** t
    correct2 = 1.0 - state.beta2 ** t
    for name, p in params.items():
        g = grads.get(name)
        if g is None:
            g = np.zeros_like(p.data)
        if not np.all(np.isfinite(g)):
            raise TrainingError(f"non-finite gradient for parameter '{name}'")
        if state.weight_decay:
            g = g + state.weight_decay * p.data
        m = state.m[name]
        v = state.v[name]
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * g * g
        p.data -= state.lr * (m / correct1) / (np.sqrt(v / correct2) + state.eps)
