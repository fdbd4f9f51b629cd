"""Vectorised filters over blocks of edge masks.

mask_degrees(masks, pairs_u, pairs_v, n) -> int64 array (len(masks), n)
    Degree of every vertex for each edge mask, where bit ``i`` of a mask is
    the pair ``(pairs_u[i], pairs_v[i])``.
"""
from __future__ import annotations

import numpy as np

from .._accel import njit, pick


@njit(cache=True)
def _mask_degrees_numba(masks, pairs_u, pairs_v, n):
    out = np.zeros((masks.shape[0], n), np.int64)
    m = pairs_u.shape[0]
    for r in range(masks.shape[0]):
        x = masks[r]
        for i in range(m):
            if (x >> i) & 1:
                out[r, pairs_u[i]] += 1
                out[r, pairs_v[i]] += 1
    return out


def _mask_degrees_numpy(masks, pairs_u, pairs_v, n):
    masks = np.asarray(masks, dtype=np.int64)
    out = np.zeros((masks.shape[0], n), np.int64)
    for i in range(len(pairs_u)):
        bit = (masks >> i) & 1
        out[:, pairs_u[i]] += bit
        out[:, pairs_v[i]] += bit
    return out


mask_degrees = pick(_mask_degrees_numba, _mask_degrees_numpy)
