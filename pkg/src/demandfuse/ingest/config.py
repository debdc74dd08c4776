"""Run configuration shared by the data pipeline and the forecaster."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from ..errors import ConfigurationError


@dataclass
class PipelineConfig:
    sales_window: int = 30
    trend_window: int = 30
    news_window: int = 7
    split_index: int | None = None  # None: 1300 on the 1610-day layout, else 80%
    normalization: str = "zscore"
    correlation_threshold: float = 0.4
    seed: int = 0

    def __post_init__(self):
        if self.normalization not in ("zscore", "none"):
            raise ConfigurationError(f"unknown normalization mode {self.normalization!r}")
        for name in ("sales_window", "trend_window", "news_window"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive")

    @classmethod
    def from_json(cls, path) -> "PipelineConfig":
        return cls(**json.loads(Path(path).read_text()))

    def to_json(self, path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
