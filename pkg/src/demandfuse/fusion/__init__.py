from .forecasting import HORIZONS, ForecastResult, forecast
from .gate import COMMIT_THRESHOLD, GateRecord, ogr
from .model import (
    KERNEL_SIZES,
    ForecastModel,
    ModelInputs,
    ModelSpec,
    build_model,
    write_sidecar,
)
from .training import (
    DEFAULT_BATCH,
    DEFAULT_EPOCHS,
    evaluate_mae,
    mae_loss,
    split_validation,
    train,
)

__all__ = [
    "HORIZONS",
    "ForecastResult",
    "forecast",
    "COMMIT_THRESHOLD",
    "GateRecord",
    "ogr",
    "KERNEL_SIZES",
    "ForecastModel",
    "ModelInputs",
    "ModelSpec",
    "build_model",
    "write_sidecar",
    "DEFAULT_BATCH",
    "DEFAULT_EPOCHS",
    "evaluate_mae",
    "mae_loss",
    "split_validation",
    "train",
]
