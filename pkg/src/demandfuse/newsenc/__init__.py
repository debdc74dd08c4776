from .embedding import (
    EMBED_DIM,
    DocEmbedding,
    FileEmbedder,
    TfidfProjectionEmbedder,
    embed_document,
)
from .han import (
    ARTICLE_SLOTS,
    DAY_SLOTS,
    EMBEDDING_SIZE,
    N_OUTPUTS,
    Han,
    HanSpec,
    TrainCurves,
    encode_news,
    evaluate_loss,
    multilabel_loss,
    null_embedding,
    train_han,
)
from .labels import DIP_FACTOR, RISE_FACTOR, MoveLabels, build_labels
from .windows import build_news_windows

__all__ = [
    "EMBED_DIM",
    "DocEmbedding",
    "FileEmbedder",
    "TfidfProjectionEmbedder",
    "embed_document",
    "ARTICLE_SLOTS",
    "DAY_SLOTS",
    "EMBEDDING_SIZE",
    "N_OUTPUTS",
    "Han",
    "HanSpec",
    "TrainCurves",
    "encode_news",
    "evaluate_loss",
    "multilabel_loss",
    "null_embedding",
    "train_han",
    "DIP_FACTOR",
    "RISE_FACTOR",
    "MoveLabels",
    "build_labels",
    "build_news_windows",
]
