# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch scoring kernel; mirrors dualmeet._purescore.score_batch."""

import numpy as np


def score_batch(const unsigned char[:, ::1] labels, int scorers, bint displacement):
    """Score a batch of finish orders (0 = team A, 1 = team B).

    Returns ``(score_a, score_b)`` int64 arrays of length ``labels.shape[0]``.
    """
    cdef Py_ssize_t n_orders = labels.shape[0]
    cdef Py_ssize_t n_pos = labels.shape[1]
    out_a = np.zeros(n_orders, dtype=np.int64)
    out_b = np.zeros(n_orders, dtype=np.int64)
    cdef long long[::1] va = out_a
    cdef long long[::1] vb = out_b
    cdef Py_ssize_t i, p
    cdef int seen_a, seen_b, rerank
    cdef long long s_a, s_b

    for i in range(n_orders):
        s_a = 0
        s_b = 0
        seen_a = 0
        seen_b = 0
        rerank = 0
        for p in range(n_pos):
            if labels[i, p] == 0:
                seen_a += 1
                if seen_a <= scorers:
                    rerank += 1
                    s_a += (p + 1) if displacement else rerank
            else:
                seen_b += 1
                if seen_b <= scorers:
                    rerank += 1
                    s_b += (p + 1) if displacement else rerank
        va[i] = s_a
        vb[i] = s_b
    return out_a, out_b
