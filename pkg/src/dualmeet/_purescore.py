"""Vectorized batch scoring, used when the compiled kernel is unavailable."""

from __future__ import annotations

import numpy as np


def score_batch(labels: np.ndarray, scorers: int, displacement: bool):
    """Score many finish orders at once.

    ``labels`` is a ``(n_orders, n_positions)`` uint8 array with 0 for team A
    and 1 for team B.  Returns ``(score_a, score_b)`` int64 arrays.
    """
    a_mask = labels == 0
    b_mask = ~a_mask
    a_seen = np.cumsum(a_mask, axis=1)
    b_seen = np.cumsum(b_mask, axis=1)
    a_scorer = a_mask & (a_seen <= scorers)
    b_scorer = b_mask & (b_seen <= scorers)
    if displacement:
        ranks = np.arange(1, labels.shape[1] + 1, dtype=np.int64)
        score_a = (a_scorer * ranks).sum(axis=1)
        score_b = (b_scorer * ranks).sum(axis=1)
    else:
        reranks = np.cumsum(a_scorer | b_scorer, axis=1).astype(np.int64)
        score_a = np.where(a_scorer, reranks, 0).sum(axis=1)
        score_b = np.where(b_scorer, reranks, 0).sum(axis=1)
    return score_a, score_b
