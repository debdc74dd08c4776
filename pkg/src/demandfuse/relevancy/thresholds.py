"""Per-category relevance thresholds.

Calibration replaces the manual review of top scores with a percentile of
each category's nonzero scores.  The thresholds file is plain JSON
(category -> value) so a curated set can override the calibrated one.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np

from ..errors import InputError
from .scoring import RelevancyResult

log = logging.getLogger(__name__)

DEFAULT_PERCENTILE = 99.5
MIN_NONZERO = 20


def calibrate_thresholds(
    results: list[RelevancyResult],
    percentile: float = DEFAULT_PERCENTILE,
) -> dict[str, float]:
    """Threshold per category from the corpus score distribution.

    Thresholds are the given percentile (linear interpolation) of the
    category's nonzero scores.  Percentile 0 means "keep every article
    that scores at all" and maps to a zero threshold.  Categories with
    fewer than 20 nonzero scores fall back to their maximum score, so
    nothing passes; that fallback is logged.
    """
    if not results:
        return {}
    categories = results[0].categories
    matrix = np.stack([r.scores for r in results])
    thresholds: dict[str, float] = {}
    for i, category in enumerate(categories):
        nonzero = matrix[:, i][matrix[:, i] > 0]
        if nonzero.size == 0:
            thresholds[category] = 0.0
        elif nonzero.size < MIN_NONZERO:
            thresholds[category] = float(nonzero.max())
            log.warning("category %s has only %d nonzero scores; threshold set to max "
                        "(nothing passes)", category, nonzero.size)
        elif percentile == 0.0:
            thresholds[category] = 0.0
        else:
            thresholds[category] = float(np.percentile(nonzero, percentile))
    return thresholds


def save_thresholds(path, thresholds: dict[str, float]) -> None:
    Path(path).write_text(json.dumps(thresholds, indent=2, sort_keys=True) + "\n")


def load_thresholds(path) -> dict[str, float]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise InputError(f"{path}: thresholds file must map category -> value")
    return {str(k): float(v) for k, v in data.items()}
