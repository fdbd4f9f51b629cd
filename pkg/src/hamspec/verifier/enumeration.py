"""Labelled enumeration, canonical forms and isomorphism.

Graphs on ``n`` vertices are indexed by edge masks: bit ``i`` is the ``i``-th
pair ``(u, v)``, ``u < v``, in lexicographic order.  Bipartite graphs are
indexed by biadjacency masks: bit ``i * nR + j`` is the edge ``u_i v_j``.
Index spaces are plain integer ranges, so work splits into chunks.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator

import networkx as nx
import numpy as np

from ..errors import CapacityError, ParameterError
from ..graph import BipartiteGraph, SimpleGraph
from ..kernels.enumerate import mask_degrees

MAX_ENUM_N = 8
MAX_BIP_CELLS = 25
CANON_MAX_N = 8
CHUNK = 4096


@lru_cache(maxsize=16)
def pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    u, v = np.triu_indices(n, 1)
    return u.astype(np.int64), v.astype(np.int64)


@lru_cache(maxsize=16)
def bip_pairs(nL: int, nR: int) -> tuple[np.ndarray, np.ndarray]:
    i = np.repeat(np.arange(nL, dtype=np.int64), nR)
    j = np.tile(np.arange(nR, dtype=np.int64), nL) + nL
    return i, j


def graph_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def graph_from_mask(n: int, mask: int) -> SimpleGraph:
    u, v = pairs(n)
    rows = [0] * n
    i = 0
    while mask:
        if mask & 1:
            a, b = int(u[i]), int(v[i])
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        mask >>= 1
        i += 1
    return SimpleGraph._raw(n, rows)


def mask_of_graph(g: SimpleGraph) -> int:
    u, v = pairs(g.n)
    return sum(1 << i for i in range(len(u)) if g.has_edge(int(u[i]), int(v[i])))


def bipartite_from_mask(nL: int, nR: int, mask: int) -> BipartiteGraph:
    full = (1 << nR) - 1
    return BipartiteGraph(nL, nR, tuple((mask >> (i * nR)) & full for i in range(nL)))


def _check_n(n: int, allow_n8: bool):
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if n > MAX_ENUM_N or (n == MAX_ENUM_N and not allow_n8):
        raise CapacityError(f"exhaustive enumeration is capped at n <= {MAX_ENUM_N - 1}"
                            f" (n = {MAX_ENUM_N} needs allow_n8)")


def masks_with_min_degree(n: int, k: int, lo: int, hi: int) -> np.ndarray:
    """Edge masks in ``[lo, hi)`` whose graph has minimum degree at least ``k``."""
    masks = np.arange(lo, hi, dtype=np.int64)
    if k <= 0 or n == 0:
        return masks
    u, v = pairs(n)
    deg = mask_degrees(masks, u, v, n)
    return masks[deg.min(axis=1) >= k]


def enumerate_graphs(n: int, predicate: Callable[[SimpleGraph], bool] | None = None,
                     min_degree: int = 0, allow_n8: bool = False,
                     lo: int = 0, hi: int | None = None) -> Iterator[tuple[int, SimpleGraph]]:
    """Every labelled graph on ``n`` vertices as ``(mask, graph)``, once each.

    ``min_degree`` is applied to whole blocks of masks before any graph is
    built; ``predicate`` filters what remains.
    """
    _check_n(n, allow_n8)
    top = graph_count(n) if hi is None else hi
    for start in range(lo, top, CHUNK):
        for m in masks_with_min_degree(n, min_degree, start, min(start + CHUNK, top)):
            g = graph_from_mask(n, int(m))
            if predicate is None or predicate(g):
                yield int(m), g


def enumerate_bipartite(nL: int, nR: int, predicate: Callable[[BipartiteGraph], bool] | None = None,
                        min_degree: int = 0, lo: int = 0, hi: int | None = None
                        ) -> Iterator[tuple[int, BipartiteGraph]]:
    """Every biadjacency mask of an ``nL x nR`` bipartite graph, once each."""
    if nL < 0 or nR < 0:
        raise ParameterError("part sizes must be nonnegative")
    if nL * nR > MAX_BIP_CELLS:
        raise CapacityError(f"bipartite enumeration is capped at nL*nR <= {MAX_BIP_CELLS}")
    top = (1 << (nL * nR)) if hi is None else hi
    bi, bj = bip_pairs(nL, nR)
    for start in range(lo, top, CHUNK):
        masks = np.arange(start, min(start + CHUNK, top), dtype=np.int64)
        if min_degree > 0 and nL + nR:
            deg = mask_degrees(masks, bi, bj, nL + nR)
            masks = masks[deg.min(axis=1) >= min_degree]
        for m in masks:
            g = bipartite_from_mask(nL, nR, int(m))
            if predicate is None or predicate(g):
                yield int(m), g


# -- canonical forms ------------------------------------------------------------


@lru_cache(maxsize=8)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def canonical_form(g: SimpleGraph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic.

    It is the smallest upper-triangle adjacency bit string over all vertex
    orderings, prefixed by ``n``; all ``n!`` orderings are scored at once.
    """
    n = g.n
    if n > CANON_MAX_N:
        raise CapacityError(f"canonical_form is capped at n <= {CANON_MAX_N}; use isomorphic()")
    if n <= 1:
        return bytes([n])
    A = g.bool_matrix()
    P = _perm_table(n)
    u, v = pairs(n)
    # bit for pair i in the relabelled graph: A[P[:, u_i], P[:, v_i]]
    bits = A[P[:, u], P[:, v]]
    weights = np.int64(1) << np.arange(len(u) - 1, -1, -1, dtype=np.int64)
    code = int((bits.astype(np.int64) * weights).sum(axis=1).min())
    nbytes = (len(u) + 7) // 8
    return bytes([n]) + code.to_bytes(nbytes, "big")


def _nx(g: SimpleGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    """Exact isomorphism test: canonical forms up to 8 vertices, VF2 beyond."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if g.n <= CANON_MAX_N:
        return canonical_form(g) == canonical_form(h)
    return nx.is_isomorphic(_nx(g), _nx(h))


def bipartite_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Isomorphism of bipartite graphs where parts may be swapped but not mixed."""
    if sorted((g.nL, g.nR)) != sorted((h.nL, h.nR)) or g.m != h.m:
        return False
    a, b = _nx(g.as_simple()), _nx(h.as_simple())
    for x, sz in ((a, g.nL), (b, h.nL)):
        for v in x.nodes:
            x.nodes[v]["side"] = 0 if v < sz else 1
    same = nx.algorithms.isomorphism.categorical_node_match("side", None)
    if nx.is_isomorphic(a, b, node_match=same):
        return True
    for v in b.nodes:
        b.nodes[v]["side"] ^= 1
    return nx.is_isomorphic(a, b, node_match=same)
