from .config import PipelineConfig
from .correlate import TrendAssignment, pearson, select_trend
from .dates import FEATURE_NAMES, DateFeatures, encode_date, encode_dates
from .frames import SeriesFrame, load_sales, load_trends, reindex
from .windows import NEWS_DIM, Normalizer, WindowBatch, make_windows

__all__ = [
    "PipelineConfig",
    "TrendAssignment",
    "pearson",
    "select_trend",
    "FEATURE_NAMES",
    "DateFeatures",
    "encode_date",
    "encode_dates",
    "SeriesFrame",
    "load_sales",
    "load_trends",
    "reindex",
    "NEWS_DIM",
    "Normalizer",
    "WindowBatch",
    "make_windows",
]
