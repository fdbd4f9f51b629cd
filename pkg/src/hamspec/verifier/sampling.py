"""Seeded graph samplers.

Every sampler takes a ``numpy.random.Generator``; audits derive one
generator per sample index from ``(seed, index)`` so any chunking of the
index range reproduces the same graphs.
"""
from __future__ import annotations

import numpy as np

from ..graph import BipartiteGraph, SimpleGraph, relabel


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(index)])


def random_graph(rng: np.random.Generator, n: int, p: float) -> SimpleGraph:
    u, v = np.triu_indices(n, 1)
    keep = rng.random(len(u)) < p
    return SimpleGraph.from_edges(n, zip(u[keep].tolist(), v[keep].tolist()))


def random_bipartite(rng: np.random.Generator, nL: int, nR: int, p: float) -> BipartiteGraph:
    M = rng.random((nL, nR)) < p
    return BipartiteGraph(nL, nR, tuple(int(sum(1 << j for j in np.nonzero(r)[0])) for r in M))


def random_bipartite_m(rng: np.random.Generator, nL: int, nR: int, m: int) -> BipartiteGraph:
    """Uniform among bipartite graphs with exactly ``m`` edges."""
    cells = rng.choice(nL * nR, size=m, replace=False)
    rows = [0] * nL
    for c in cells.tolist():
        rows[c // nR] |= 1 << (c % nR)
    return BipartiteGraph(nL, nR, tuple(rows))


def shuffle_graph(rng: np.random.Generator, g: SimpleGraph) -> SimpleGraph:
    return relabel(g, rng.permutation(g.n).tolist())


def shuffle_bipartite(rng: np.random.Generator, g: BipartiteGraph) -> BipartiteGraph:
    """Random relabelling inside each part."""
    pl = rng.permutation(g.nL).tolist()
    pr = rng.permutation(g.nR).tolist()
    rows = [0] * g.nL
    for i, row in enumerate(g.biadj):
        r = 0
        for j in range(g.nR):
            if row >> j & 1:
                r |= 1 << pr[j]
        rows[pl[i]] = r
    return BipartiteGraph(g.nL, g.nR, tuple(rows))


def flip_edges(rng: np.random.Generator, g: SimpleGraph, count: int) -> SimpleGraph:
    if g.n < 2 or count <= 0:
        return g
    rows = list(g.adj)
    for _ in range(count):
        u, v = rng.choice(g.n, size=2, replace=False).tolist()
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return SimpleGraph._raw(g.n, rows)


def flip_cross(rng: np.random.Generator, g: BipartiteGraph, count: int) -> BipartiteGraph:
    if g.nL == 0 or g.nR == 0 or count <= 0:
        return g
    rows = list(g.biadj)
    for _ in range(count):
        i = int(rng.integers(g.nL))
        j = int(rng.integers(g.nR))
        rows[i] ^= 1 << j
    return BipartiteGraph(g.nL, g.nR, tuple(rows))
