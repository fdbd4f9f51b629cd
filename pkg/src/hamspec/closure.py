"""Degree-sum closures.

``k_closure`` repeatedly joins nonadjacent pairs whose degree sum is at least
``k``; ``bipartite_closure`` does the same but only across the two parts.
Both run on :func:`hamspec.kernels.closure.closure_rounds`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .graph import BipartiteGraph, SimpleGraph
from .kernels.closure import closure_rounds


@dataclass(frozen=True)
class ClosureTrace:
    """Edges added, in order, with the degree sum that qualified them.

    The degree sum is read at the start of the round in which the edge was
    added.  For bipartite closures the endpoints are indices of
    :meth:`BipartiteGraph.as_simple` (``U`` first).
    """

    k: int
    added_edges: tuple[tuple[int, int, int], ...]
    rounds: int

    def as_dict(self) -> dict:
        return {"k": self.k, "rounds": self.rounds, "added_edges": [list(e) for e in self.added_edges]}


def _run(a: np.ndarray, allowed: np.ndarray, k: int):
    closed, tr = closure_rounds(a, allowed, np.int64(k))
    rounds = int(tr[-1, 3]) + 1 if len(tr) else 0
    edges = tuple((int(u), int(v), int(d)) for u, v, d, _ in tr)
    return closed, ClosureTrace(k, edges, rounds)


def _full_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=np.bool_)


def _cross_mask(nL: int, nR: int) -> np.ndarray:
    n = nL + nR
    m = np.zeros((n, n), dtype=np.bool_)
    m[:nL, nL:] = True
    m[nL:, :nL] = True
    return m


def k_closure(g: SimpleGraph, k: int) -> tuple[SimpleGraph, ClosureTrace]:
    if k < 0:
        raise ParameterError("k must be nonnegative")
    if g.n == 0:
        return g, ClosureTrace(k, (), 0)
    closed, trace = _run(g.bool_matrix(), _full_mask(g.n), k)
    return SimpleGraph._from_bool(closed), trace


def bipartite_closure(g: BipartiteGraph, k: int) -> tuple[BipartiteGraph, ClosureTrace]:
    if k < 0:
        raise ParameterError("k must be nonnegative")
    s = g.as_simple()
    if s.n == 0:
        return g, ClosureTrace(k, (), 0)
    closed, trace = _run(s.bool_matrix(), _cross_mask(g.nL, g.nR), k)
    w = np.int64(1) << np.arange(g.nR, dtype=np.int64) if g.nR <= 62 else None
    block = closed[: g.nL, g.nL:]
    if w is not None:
        rows = tuple(int(x) for x in (block.astype(np.int64) * w).sum(axis=1))
    else:
        rows = tuple(sum(1 << int(j) for j in np.nonzero(r)[0]) for r in block)
    return BipartiteGraph(g.nL, g.nR, rows), trace


def is_k_closed(g: SimpleGraph, k: int) -> bool:
    d = g.degrees()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v) and d[u] + d[v] >= k:
                return False
    return True


def is_bipartite_k_closed(g: BipartiteGraph, k: int) -> bool:
    dl, dr = g.left_degrees(), g.right_degrees()
    for i, row in enumerate(g.biadj):
        for j in range(g.nR):
            if not row >> j & 1 and dl[i] + dr[j] >= k:
                return False
    return True


def sequential_closure(g: SimpleGraph, k: int, order=None) -> SimpleGraph:
    """Reference closure: scan pairs in ``order`` (default lexicographic) and
    join the first qualifying one, restarting after each addition."""
    pairs = list(order) if order is not None else [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    rows = list(g.adj)
    deg = [bin(r).count("1") for r in rows]
    changed = True
    while changed:
        changed = False
        for u, v in pairs:
            if not rows[u] >> v & 1 and deg[u] + deg[v] >= k:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                deg[u] += 1
                deg[v] += 1
                changed = True
                break
    return SimpleGraph._raw(g.n, rows)
