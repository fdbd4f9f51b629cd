"""Degree-sum closure by rounds.

closure_rounds(adj, allowed, k) -> (closed, trace)

``adj`` and ``allowed`` are symmetric boolean matrices.  Each round reads the
degrees once, then joins every nonadjacent allowed pair ``u < v`` whose
degree sum is at least ``k``, in lexicographic order.  Degrees only grow, so
every pair joined in a round still qualifies when the batch is replayed one
edge at a time.  The result is therefore the usual closure.

``trace`` has one row ``(u, v, degree_sum, round)`` per added edge, where the
degree sum is the one read at the start of that round.
"""
from __future__ import annotations

import numpy as np

from .._accel import njit, pick


@njit(cache=True)
def _closure_rounds_numba(adj, allowed, k):
    n = adj.shape[0]
    out = adj.copy()
    deg = np.zeros(n, np.int64)
    cap = n * (n - 1) // 2 + 1
    trace = np.zeros((cap, 4), np.int64)
    t = 0
    rnd = 0
    while True:
        for u in range(n):
            c = 0
            for v in range(n):
                if out[u, v]:
                    c += 1
            deg[u] = c
        added = 0
        for u in range(n):
            for v in range(u + 1, n):
                if allowed[u, v] and not out[u, v] and deg[u] + deg[v] >= k:
                    trace[t, 0] = u
                    trace[t, 1] = v
                    trace[t, 2] = deg[u] + deg[v]
                    trace[t, 3] = rnd
                    t += 1
                    added += 1
        if added == 0:
            break
        for i in range(t - added, t):
            out[trace[i, 0], trace[i, 1]] = True
            out[trace[i, 1], trace[i, 0]] = True
        rnd += 1
    return out, trace[:t].copy()


def _closure_rounds_numpy(adj, allowed, k):
    out = np.array(adj, dtype=np.bool_, copy=True)
    allowed = np.triu(np.asarray(allowed, dtype=np.bool_), 1)
    rows = []
    rnd = 0
    while True:
        deg = out.sum(axis=1)
        sums = deg[:, None] + deg[None, :]
        cand = allowed & ~out & (sums >= k)
        u, v = np.nonzero(cand)
        if u.size == 0:
            break
        rows.append(np.stack([u, v, sums[u, v], np.full(u.size, rnd)], axis=1))
        out[u, v] = True
        out[v, u] = True
        rnd += 1
    if rows:
        trace = np.concatenate(rows).astype(np.int64)
    else:
        trace = np.zeros((0, 4), np.int64)
    return out, trace


closure_rounds = pick(_closure_rounds_numba, _closure_rounds_numpy)
