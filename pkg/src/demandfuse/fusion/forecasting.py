"""Point forecasts in raw units, one day ahead or a recursive week ahead.

Multi-day forecasts feed each predicted day back into the sales window
(normalized space) and pull trend, date, and news inputs for the later
days from the supplied data, so every exogenous input must cover the whole
horizon.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .. import __version__
from ..errors import InputError, ParameterError
from ..ingest.correlate import TrendAssignment
from ..ingest.dates import encode_dates
from ..ingest.frames import SeriesFrame
from ..ingest.windows import Normalizer
from .model import ForecastModel, ModelInputs

HORIZONS = (1, 7)


@dataclass(frozen=True)
class ForecastResult:
    category: str
    dates: tuple[dt.date, ...]
    predictions: np.ndarray   # raw units
    horizon: int
    model_version: str

    def __post_init__(self):
        if not np.all(np.isfinite(self.predictions)):
            raise InputError(f"non-finite forecast for {self.category}")


def forecast(
    model: ForecastModel,
    frame: SeriesFrame,
    assignment: TrendAssignment,
    start_date: dt.date,
    horizon: int,
    news_by_day: np.ndarray,
    trend_frame: SeriesFrame | None = None,
    normalization: str = "zscore",
) -> ForecastResult:
    """Predict `horizon` consecutive days starting at `start_date`."""
    if horizon not in HORIZONS:
        raise ParameterError(f"horizon must be one of {HORIZONS}, got {horizon}")
    spec = model.spec
    t0 = frame.day_index(start_date)
    history = spec.sales_window if not spec.has_trend else max(spec.sales_window,
                                                               spec.trend_window)
    if t0 < history:
        raise InputError(f"{start_date} has only {t0} days of history; "
                         f"the model needs {history}")
    if t0 + horizon > frame.n_days:
        raise InputError(f"horizon {horizon} from {start_date} runs past the calendar")
    if news_by_day.shape[0] < t0 + horizon:
        raise InputError("news embeddings do not cover the forecast horizon")

    series = frame.series(assignment.product_category)
    norm = Normalizer.fit(series[: frame.split_index], normalization)
    sales_hist = list(norm.transform(series[:t0]))

    trend_series = None
    if spec.has_trend:
        if trend_frame is None or not assignment.has_trend:
            raise InputError("model expects a trend input but none is configured")
        raw = trend_frame.series(assignment.trend_category)
        if len(raw) < t0 + horizon:
            raise InputError("trend series does not cover the forecast horizon")
        trend_series = Normalizer.fit(raw[: frame.split_index], normalization).transform(raw)

    target_dates = tuple(start_date + dt.timedelta(days=i) for i in range(horizon))
    preds_norm = []
    for step, day in enumerate(target_dates):
        t = t0 + step
        inputs = ModelInputs(
            sales=np.asarray(sales_hist[t - spec.sales_window:t])[None, :],
            trend=trend_series[t - spec.trend_window:t][None, :]
            if trend_series is not None else None,
            dates=encode_dates([day]),
            news=news_by_day[t][None, :],
            targets=np.zeros(1),
        )
        pred = float(model.predict(inputs)[0])
        preds_norm.append(pred)
        sales_hist.append(pred)  # recursive feedback in normalized space
    predictions = norm.invert(np.asarray(preds_norm))
    return ForecastResult(assignment.product_category, target_dates, predictions,
                          horizon, model_version=f"demandfuse-{__version__}-seed{model.seed}")
