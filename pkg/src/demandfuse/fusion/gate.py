"""The epoch-acceptance ratio.

Overfitting movement is the epoch-over-epoch change of the validation-minus-
training loss gap; generalization movement is the change of the validation
loss itself.  Their ratio gates weight commits: an epoch is kept only when
the ratio is below a small threshold (default 1e-2), i.e. when the gap grows
slowly relative to how fast validation improves.  Zero generalization
movement maps to a +inf sentinel so the gate rejects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import TrainingError

COMMIT_THRESHOLD = 1e-2


@dataclass(frozen=True)
class GateRecord:
    """One epoch's losses, ratio inputs, and verdict.

    `ref_*` are the losses of the state this epoch was measured against
    (the last committed snapshot; the initialization for epoch 1), so
    overfit_delta == gen_delta - (train_loss - ref_train_loss) holds
    exactly for every record.
    """

    epoch: int
    train_loss: float
    val_loss: float
    ref_train_loss: float
    ref_val_loss: float
    overfit_delta: float
    gen_delta: float
    ratio: float
    committed: bool

    def to_dict(self) -> dict:
        return {
            "epoch": self.epoch,
            "train_loss": self.train_loss,
            "val_loss": self.val_loss,
            "ref_train_loss": self.ref_train_loss,
            "ref_val_loss": self.ref_val_loss,
            "overfit_delta": self.overfit_delta,
            "gen_delta": self.gen_delta,
            "ratio": None if math.isinf(self.ratio) else self.ratio,
            "committed": self.committed,
        }


def ogr(prev: tuple[float, float], curr: tuple[float, float]) -> tuple[float, float, float]:
    """(overfit_delta, gen_delta, ratio) from (train, val) loss pairs.

    overfit_delta = (val - train) now minus (val - train) before;
    gen_delta = val now minus val before.  Signs are preserved; a zero
    gen_delta yields the +inf rejection sentinel.
    """
    prev_train, prev_val = prev
    curr_train, curr_val = curr
    values = (prev_train, prev_val, curr_train, curr_val)
    if not all(math.isfinite(v) for v in values):
        raise TrainingError(f"non-finite losses in ratio computation: {values}")
    overfit_delta = (curr_val - curr_train) - (prev_val - prev_train)
    gen_delta = curr_val - prev_val
    if gen_delta == 0.0:
        return overfit_delta, gen_delta, math.inf
    return overfit_delta, gen_delta, overfit_delta / gen_delta
