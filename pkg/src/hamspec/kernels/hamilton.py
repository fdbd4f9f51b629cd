"""Subset dynamic programs over induced subgraphs.

All kernels take ``adj``: an int64 array whose entry ``v`` is the neighbour
bitmask of vertex ``v`` (so ``n <= 62``).  Tables are indexed by vertex
masks and describe the induced subgraph ``G[mask]`` for every mask at once,
which is what the q-deletion properties need.

cover_table(adj) -> (count, ends)
    ``count[mask]`` is the minimum number of vertex-disjoint paths covering
    ``G[mask]``; ``ends[mask]`` is the set of vertices that can be the final
    vertex of the last path in an optimal ordered cover.  ``G[mask]`` is
    traceable iff ``count[mask] == 1``, and then ``ends[mask]`` is exactly the
    set of Hamiltonian-path endpoints.

paths_from(adj, s) -> ends
    ``ends[mask]`` is the set of ``v`` such that ``G[mask]`` has a spanning
    path from ``s`` to ``v`` (zero when ``s`` is not in ``mask``).

cycle_table(adj) -> flags
    ``flags[mask]`` is true iff ``G[mask]`` is Hamiltonian (``|mask| >= 3``).
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .._accel import njit, pick


# -- numba ------------------------------------------------------------------


@njit(cache=True)
def _cover_table_numba(adj):
    n = adj.shape[0]
    size = 1 << n
    count = np.zeros(size, np.int8)
    ends = np.zeros(size, np.int64)
    for mask in range(1, size):
        best = 127
        bestset = 0
        m = mask
        while m:
            low = m & -m
            v = 0
            while (low >> v) != 1:
                v += 1
            m ^= low
            prev = mask ^ low
            if ends[prev] & adj[v]:
                val = count[prev]
            else:
                val = count[prev] + 1
            if val < best:
                best = val
                bestset = low
            elif val == best:
                bestset |= low
        count[mask] = best
        ends[mask] = bestset
    return count, ends


@njit(cache=True)
def _paths_from_numba(adj, s):
    n = adj.shape[0]
    size = 1 << n
    ends = np.zeros(size, np.int64)
    sbit = np.int64(1) << s
    ends[sbit] = sbit
    for mask in range(1, size):
        if not (mask & sbit) or mask == sbit:
            continue
        acc = 0
        m = mask ^ sbit
        while m:
            low = m & -m
            v = 0
            while (low >> v) != 1:
                v += 1
            m ^= low
            if ends[mask ^ low] & adj[v]:
                acc |= low
        ends[mask] = acc
    return ends


@njit(cache=True)
def _cycle_table_numba(adj):
    n = adj.shape[0]
    size = 1 << n
    flags = np.zeros(size, np.bool_)
    for s in range(n):
        # subgraph on vertices s..n-1, relabelled 0..n-s-1, start at 0
        w = n - s
        sub = np.empty(w, np.int64)
        for i in range(w):
            sub[i] = adj[s + i] >> s
        ends = _paths_from_numba(sub, 0)
        back = sub[0]
        for m in range(1, 1 << w, 2):
            if ends[m] & back:
                pop = 0
                t = m
                while t:
                    t &= t - 1
                    pop += 1
                if pop >= 3:
                    flags[m << s] = True
    return flags


# -- numpy ------------------------------------------------------------------


@lru_cache(maxsize=32)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    masks = np.arange(1 << n, dtype=np.int64)
    pops = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        pops += (masks >> v) & 1
    order = np.argsort(pops, kind="stable")
    counts = np.bincount(pops, minlength=n + 1)
    out = []
    start = 0
    for c in counts:
        out.append(masks[order[start:start + c]])
        start += c
    return tuple(out)


@lru_cache(maxsize=32)
def _bits(n: int) -> np.ndarray:
    return np.int64(1) << np.arange(n, dtype=np.int64)


def _cover_table_numpy(adj):
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    count = np.zeros(1 << n, np.int8)
    ends = np.zeros(1 << n, np.int64)
    if n == 0:
        return count, ends
    bits = _bits(n)
    layers = _layers(n)
    for pop in range(1, n + 1):
        M = layers[pop][:, None]
        inside = (M & bits) != 0
        prev = np.where(inside, M ^ bits, 0)
        joins = (ends[prev] & adj) != 0
        val = count[prev].astype(np.int16) + np.where(joins, 0, 1)
        val = np.where(inside, val, 127)
        best = val.min(axis=1)
        hit = val == best[:, None]
        count[layers[pop]] = best.astype(np.int8)
        ends[layers[pop]] = np.where(hit, bits, 0).sum(axis=1)
    return count, ends


def _paths_from_numpy(adj, s):
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    ends = np.zeros(1 << n, np.int64)
    sbit = np.int64(1) << s
    ends[sbit] = sbit
    bits = _bits(n)
    layers = _layers(n)
    for pop in range(2, n + 1):
        M = layers[pop]
        M = M[(M & sbit) != 0][:, None]
        if M.size == 0:
            continue
        inside = ((M & bits) != 0) & (bits != sbit)
        prev = np.where(inside, M ^ bits, 0)
        ok = inside & ((ends[prev] & adj) != 0)
        ends[M[:, 0]] = np.where(ok, bits, 0).sum(axis=1)
    return ends


def _cycle_table_numpy(adj):
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    flags = np.zeros(1 << n, np.bool_)
    for s in range(n):
        w = n - s
        if w < 3:
            break
        sub = adj[s:] >> s
        ends = _paths_from_numpy(sub, 0)
        m = np.arange(1, 1 << w, 2, dtype=np.int64)
        pops = np.zeros(m.shape, np.int64)
        for v in range(w):
            pops += (m >> v) & 1
        ok = ((ends[m] & sub[0]) != 0) & (pops >= 3)
        flags[m[ok] << s] = True
    return flags


cover_table = pick(_cover_table_numba, _cover_table_numpy)
paths_from = pick(_paths_from_numba, _paths_from_numpy)
cycle_table = pick(_cycle_table_numba, _cycle_table_numpy)
