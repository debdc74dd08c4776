"""Multimodal demand forecasting toolkit.

Subpackages:

- ``tensor``    dense-tensor engine with reverse-mode autodiff and layer primitives
- ``ingest``    sales/trend loading, cyclic date features, windowing
- ``relevancy`` keyword generation and news-to-category relevancy scoring
- ``newsenc``   document embeddings and the attention/GRU news encoder
- ``fusion``    the gated multimodal Conv1D forecaster with ratio-gated commits
- ``evalcli``   metrics, benchmarking, attribution, synthetic corpora, CLI
"""

__version__ = "0.1.0"
