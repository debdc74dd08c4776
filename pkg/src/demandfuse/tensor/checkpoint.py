"""Parameter checkpoint files.

A checkpoint is a single JSON document with a header (format tag, engine
version, seed, free-form metadata) and a flat name -> {shape, data} map.
JSON float repr round-trips exactly in both directions, so saving and
reloading is lossless and files are byte-stable for identical inputs.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .. import __version__
from ..errors import InputError

FORMAT = "demandfuse.checkpoint"
FORMAT_VERSION = 1


def save_checkpoint(
    path,
    arrays: dict[str, np.ndarray],
    seed: int | None = None,
    meta: dict | None = None,
) -> None:
    doc = {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "engine_version": __version__,
        "seed": seed,
        "meta": meta or {},
        "params": {
            name: {
                "shape": list(np.asarray(a).shape),
                "data": [float(x) for x in np.asarray(a, dtype=np.float64).reshape(-1)],
            }
            for name, a in arrays.items()
        },
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def load_checkpoint(path) -> tuple[dict[str, np.ndarray], dict]:
    """Returns (arrays, header).  Header carries seed, meta, and versions."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not a valid checkpoint file ({exc})") from exc
    if doc.get("format") != FORMAT:
        raise InputError(f"{path}: unrecognized checkpoint format tag {doc.get('format')!r}")
    arrays = {
        name: np.asarray(entry["data"], dtype=np.float64).reshape(entry["shape"])
        for name, entry in doc["params"].items()
    }
    header = {k: doc[k] for k in ("format", "format_version", "engine_version", "seed", "meta")}
    return arrays, header
