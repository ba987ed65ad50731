"""Scoring-kernel selection.

The compiled Cython kernel is used when it imported successfully; the
vectorized numpy implementation is the fallback.  Set ``DUALMEET_PURE=1``
to force the fallback (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

import numpy as np

from . import _purescore

_FORCE_PURE = os.environ.get("DUALMEET_PURE", "").lower() in ("1", "true", "yes")

if not _FORCE_PURE:
    try:
        from . import _fastscore as _impl

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build environment
        _impl = _purescore
        BACKEND = "pure"
else:
    _impl = _purescore
    BACKEND = "pure"


def score_batch(labels: np.ndarray, scorers: int, displacement: bool):
    """Score a ``(n_orders, n_positions)`` uint8 label matrix (0=A, 1=B)."""
    labels = np.ascontiguousarray(labels, dtype=np.uint8)
    return _impl.score_batch(labels, scorers, displacement)
