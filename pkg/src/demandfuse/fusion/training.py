"""Ratio-gated training loop.

Every epoch runs a full pass of Adam updates to produce candidate weights,
then measures eval-mode train and validation losses.  The candidate is
committed when its acceptance ratio (see gate module) clears the threshold
and rolled back to the last committed snapshot otherwise; epoch 1 always
commits to bootstrap the reference.  Rolled-back candidates are measured
against the committed state's losses, since their own weights no longer
exist after the rollback.  Only weights and batch-norm buffers roll back;
optimizer moments keep evolving, otherwise rejected epochs would reproduce
themselves forever.

Disabling the gate (threshold = +inf) makes every epoch commit, which is
plain epoch training: snapshots are then never restored, so the parameter
trajectory is identical update for update.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import TrainingError
from ..tensor import AdamState, adam_step, no_grad
from .gate import COMMIT_THRESHOLD, GateRecord, ogr
from .model import ForecastModel, ModelInputs

log = logging.getLogger(__name__)

DEFAULT_EPOCHS = 200
DEFAULT_BATCH = 128
VALIDATION_FRACTION = 0.1


def split_validation(inputs: ModelInputs, fraction: float = VALIDATION_FRACTION
                     ) -> tuple[ModelInputs, ModelInputs]:
    """Chronological tail split: the last `fraction` of rows becomes validation."""
    n = len(inputs)
    n_val = max(1, int(round(n * fraction)))
    if n_val >= n:
        raise TrainingError(f"cannot hold out {n_val} of {n} rows for validation")
    return inputs.slice(0, n - n_val), inputs.slice(n - n_val, n)


def mae_loss(model: ForecastModel, inputs: ModelInputs, training: bool):
    pred = model.forward(inputs, training=training)
    return (pred - inputs.targets).abs().mean()


def evaluate_mae(model: ForecastModel, inputs: ModelInputs, batch_size: int = 1024) -> float:
    total, rows = 0.0, 0
    with no_grad():
        for lo in range(0, len(inputs), batch_size):
            hi = min(lo + batch_size, len(inputs))
            part = inputs.slice(lo, hi)
            pred = model.forward(part, training=False)
            total += float(np.abs(pred.data - part.targets).sum())
            rows += hi - lo
    return total / max(rows, 1)


def train(
    model: ForecastModel,
    train_inputs: ModelInputs,
    val_inputs: ModelInputs,
    epochs: int = DEFAULT_EPOCHS,
    threshold: float = COMMIT_THRESHOLD,
    batch_size: int = DEFAULT_BATCH,
) -> list[GateRecord]:
    """Fit in place; returns the full acceptance trace.

    After the call the model holds the last committed state (the epoch-1
    state, with a warning, if nothing later ever passed the gate).
    """
    state = AdamState.for_params(model.params, lr=model.spec.lr,
                                 weight_decay=model.spec.l2)
    committed = model.snapshot()
    ref = (evaluate_mae(model, train_inputs), evaluate_mae(model, val_inputs))
    records: list[GateRecord] = []
    commits_after_first = 0
    n = len(train_inputs)
    for epoch in range(1, epochs + 1):
        order = model.rng.permutation(n)
        for lo in range(0, n, batch_size):
            part = train_inputs.take(order[lo:lo + batch_size])
            loss = mae_loss(model, part, training=True)
            if not np.isfinite(loss.data):
                raise TrainingError(f"non-finite training loss at epoch {epoch}")
            for p in model.params.values():
                p.zero_grad()
            loss.backward()
            adam_step(model.params, {k: p.grad for k, p in model.params.items()}, state)
        train_loss = evaluate_mae(model, train_inputs)
        val_loss = evaluate_mae(model, val_inputs)
        overfit_delta, gen_delta, ratio = ogr(ref, (train_loss, val_loss))
        commit = epoch == 1 or ratio < threshold
        records.append(GateRecord(epoch, train_loss, val_loss, ref[0], ref[1],
                                  overfit_delta, gen_delta, ratio, commit))
        if commit:
            committed = model.snapshot()
            ref = (train_loss, val_loss)
            if epoch > 1:
                commits_after_first += 1
        else:
            # weights (and batch-norm buffers) revert; the optimizer moments
            # keep evolving so later candidates can still move
            model.restore(committed)
    if epochs > 1 and commits_after_first == 0:
        log.warning("no epoch after the first passed the gate; returning the "
                    "epoch-1 state for %s", model.spec)
    return records
