"""Exact deciders for Hamiltonian-type properties.

Everything exact runs on the subset tables of :mod:`hamspec.kernels.hamilton`,
which describe all induced subgraphs at once.  That makes the "remove at
most q vertices" properties a scan over one table rather than one search
per deleted set.

Conventions: a graph with fewer than 3 vertices has no Hamiltonian cycle;
``K_1`` is traceable and (vacuously) Hamilton-connected; ``kappa(K_n) = n-1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import CapacityError, ParameterError
from .graph import (
    KERNEL_MAX_N,
    BipartiteGraph,
    SimpleGraph,
    VertexSet,
    connected_components,
    delete_vertices,
    is_connected,
)
from .kernels.hamilton import cover_table, cycle_table, paths_from

DEFAULT_CAP = 20
HARD_CAP = 26


class Property(str, Enum):
    HAM_CYCLE = "HAM_CYCLE"
    HAM_PATH = "HAM_PATH"
    HAM_CONNECTED = "HAM_CONNECTED"
    Q_HAM = "Q_HAM"
    Q_TRACEABLE = "Q_TRACEABLE"
    Q_HAM_CONNECTED = "Q_HAM_CONNECTED"
    Q_EDGE_HAM = "Q_EDGE_HAM"
    Q_PATH_COVER = "Q_PATH_COVER"
    QQ_HAM = "QQ_HAM"
    QQ_TRACEABLE = "QQ_TRACEABLE"
    PQ_TRACEABLE = "PQ_TRACEABLE"
    VERTEX_CONN = "VERTEX_CONN"
    EDGE_CONN = "EDGE_CONN"


@dataclass(frozen=True)
class PropertyQuery:
    prop: Property
    q: int = 0
    p: int | None = None

    def __post_init__(self):
        if self.q < 0 or (self.p is not None and self.p < 0):
            raise ParameterError("q and p must be nonnegative")


class CertKind(str, Enum):
    CYCLE = "CYCLE"
    PATH = "PATH"
    PATH_SYSTEM = "PATH_SYSTEM"
    CUT = "CUT"
    NONE = "NONE"


@dataclass(frozen=True)
class Certificate:
    """A checkable witness.

    CYCLE and PATH list vertices in order; PATH_SYSTEM lists paths in
    ``paths``; CUT stores the removed set in ``vertices`` and the resulting
    component count in ``components``.
    """

    kind: CertKind
    vertices: tuple[int, ...] = ()
    paths: tuple[tuple[int, ...], ...] = ()
    components: int = 0

    def validate(self, g: SimpleGraph) -> bool:
        if self.kind == CertKind.CYCLE:
            vs = self.vertices
            return (len(vs) == g.n >= 3 and len(set(vs)) == g.n
                    and all(g.has_edge(vs[i], vs[(i + 1) % g.n]) for i in range(g.n)))
        if self.kind == CertKind.PATH:
            vs = self.vertices
            return (len(vs) == g.n and len(set(vs)) == g.n
                    and all(g.has_edge(a, b) for a, b in zip(vs, vs[1:])))
        if self.kind == CertKind.PATH_SYSTEM:
            seen = [v for p in self.paths for v in p]
            return (sorted(seen) == list(range(g.n))
                    and all(g.has_edge(a, b) for p in self.paths for a, b in zip(p, p[1:])))
        if self.kind == CertKind.CUT:
            s = VertexSet.of(self.vertices)
            return len(connected_components(delete_vertices(g, s))) == self.components
        return self.kind == CertKind.NONE

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind.value}
        if self.vertices:
            d["vertices"] = list(self.vertices)
        if self.paths:
            d["paths"] = [list(p) for p in self.paths]
        if self.kind == CertKind.CUT:
            d["components"] = self.components
        return d


def _check_cap(g: SimpleGraph, cap: int):
    lim = min(cap, HARD_CAP, KERNEL_MAX_N)
    if g.n > lim:
        raise CapacityError(f"exact oracle cap is n <= {lim}, got n = {g.n}")


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


# -- single-graph Hamiltonicity ------------------------------------------------


def hamiltonian_cycle(g: SimpleGraph, cap: int = DEFAULT_CAP) -> Certificate | None:
    if g.n < 3:
        return None
    _check_cap(g, cap)
    adj = g.adj_array()
    ends = paths_from(adj, 0)
    full = (1 << g.n) - 1
    close = int(ends[full]) & g.adj[0]
    if not close:
        return None
    return Certificate(CertKind.CYCLE, tuple(reversed(_walk_back(ends, g, full, _low(close), 0))))


def _walk_back(ends, g: SimpleGraph, mask: int, v: int, start: int) -> list[int]:
    seq = [v]
    while mask != 1 << start:
        mask ^= 1 << v
        nxt = int(ends[mask]) & g.adj[v]
        v = _low(nxt)
        seq.append(v)
    return seq


def hamiltonian_path(g: SimpleGraph, cap: int = DEFAULT_CAP) -> Certificate | None:
    if g.n < 1:
        raise ParameterError("need at least one vertex")
    _check_cap(g, cap)
    count, ends = cover_table(g.adj_array())
    full = (1 << g.n) - 1
    if count[full] != 1:
        return None
    return Certificate(CertKind.PATH, tuple(_cover_paths(count, ends, g, full)[0]))


def _cover_paths(count, ends, g: SimpleGraph, mask: int) -> list[tuple[int, ...]]:
    paths: list[list[int]] = []
    if not mask:
        return []
    v = _low(int(ends[mask]))
    cur = [v]
    target = int(count[mask])
    while True:
        prev = mask ^ (1 << v)
        if not prev:
            break
        link = int(ends[prev]) & g.adj[v]
        if int(count[prev]) == target and link:
            v = _low(link)
            cur.append(v)
        else:
            paths.append(cur)
            v = _low(int(ends[prev]))
            cur = [v]
            target -= 1
        mask = prev
    paths.append(cur)
    return [tuple(p) for p in reversed(paths)]


def is_hamiltonian(g: SimpleGraph, cap: int = DEFAULT_CAP) -> bool:
    return hamiltonian_cycle(g, cap) is not None


def is_traceable(g: SimpleGraph, cap: int = DEFAULT_CAP) -> bool:
    if g.n == 0:
        return True
    return hamiltonian_path(g, cap) is not None


def min_path_cover(g: SimpleGraph, cap: int = DEFAULT_CAP) -> int:
    if g.n == 0:
        return 0
    _check_cap(g, cap)
    count, _ = cover_table(g.adj_array())
    return int(count[(1 << g.n) - 1])


def path_cover_certificate(g: SimpleGraph, cap: int = DEFAULT_CAP) -> Certificate:
    _check_cap(g, cap)
    count, ends = cover_table(g.adj_array())
    return Certificate(CertKind.PATH_SYSTEM, paths=tuple(_cover_paths(count, ends, g, (1 << g.n) - 1)))


def _hc_table(g: SimpleGraph) -> np.ndarray:
    """``flags[mask]`` true iff ``g[mask]`` is Hamilton-connected."""
    n = g.n
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    ok = np.ones(size, dtype=np.bool_)
    adj = g.adj_array()
    for s in range(n):
        ends = paths_from(adj, s)
        sbit = np.int64(1) << s
        has = (masks & sbit) != 0
        need = masks & ~sbit
        ok &= ~has | ((ends & need) == need)
    ok[0] = False
    return ok


def hamilton_connected(g: SimpleGraph, cap: int = DEFAULT_CAP) -> bool:
    if g.n < 2:
        raise ParameterError("Hamilton-connectedness needs n >= 2")
    _check_cap(g, cap)
    adj = g.adj_array()
    full = (1 << g.n) - 1
    for s in range(g.n):
        ends = paths_from(adj, s)
        if int(ends[full]) != full ^ (1 << s):
            return False
    return True


# -- q-deletion properties -----------------------------------------------------


def _popcounts(n: int) -> np.ndarray:
    m = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        pc += (m >> v) & 1
    return pc


def q_property(g: SimpleGraph, prop, q: int, cap: int = DEFAULT_CAP) -> bool:
    """Every removal of at most ``q`` vertices leaves a traceable
    (``Q_TRACEABLE``), Hamiltonian (``Q_HAM``) or Hamilton-connected
    (``Q_HAM_CONNECTED``) graph."""
    prop = Property(prop)
    n = g.n
    if q < 0:
        raise ParameterError("q must be nonnegative")
    if prop == Property.Q_TRACEABLE:
        if q > n - 1:
            raise ParameterError(f"Q_TRACEABLE needs q <= n-1, got q={q}, n={n}")
    elif prop == Property.Q_HAM:
        if q > n - 3:
            raise ParameterError(f"Q_HAM needs q <= n-3, got q={q}, n={n}")
    elif prop == Property.Q_HAM_CONNECTED:
        if q > n - 2:
            raise ParameterError(f"Q_HAM_CONNECTED needs q <= n-2, got q={q}, n={n}")
    else:
        raise ParameterError(f"q_property does not handle {prop}")
    _check_cap(g, cap)
    keep = _popcounts(n) >= n - q
    if prop == Property.Q_TRACEABLE:
        count, _ = cover_table(g.adj_array())
        return bool(np.all(count[keep] == 1))
    if prop == Property.Q_HAM:
        return bool(np.all(cycle_table(g.adj_array())[keep]))
    return bool(np.all(_hc_table(g)[keep]))


def q_traceable(g: SimpleGraph, q: int, cap: int = DEFAULT_CAP) -> bool:
    return q_property(g, Property.Q_TRACEABLE, q, cap)


def q_hamiltonian(g: SimpleGraph, q: int, cap: int = DEFAULT_CAP) -> bool:
    return q_property(g, Property.Q_HAM, q, cap)


def linear_forests(g: SimpleGraph, q: int):
    """Edge sets of size ``<= q`` forming vertex-disjoint paths, smallest first."""
    edges = g.edges()
    yield ()
    for size in range(1, q + 1):
        for combo in combinations(edges, size):
            deg: dict[int, int] = {}
            bad = False
            for u, v in combo:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
                if deg[u] > 2 or deg[v] > 2:
                    bad = True
                    break
            if bad:
                continue
            # acyclic: edges == vertices - components
            parent = {x: x for x in deg}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in combo:
                a, b = find(u), find(v)
                if a == b:
                    bad = True
                    break
                parent[a] = b
            if not bad:
                yield combo


def _forest_paths(forest: Sequence[tuple[int, int]]) -> list[list[int]]:
    nb: dict[int, list[int]] = {}
    for u, v in forest:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    seen: set[int] = set()
    out = []
    for x in sorted(nb):
        if x in seen or len(nb[x]) != 1:
            continue
        path = [x]
        seen.add(x)
        prev, cur = None, x
        while True:
            nxt = [y for y in nb[cur] if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)
        out.append(path)
    return out


def forced_hamiltonian(g: SimpleGraph, forest: Sequence[tuple[int, int]], cap: int = DEFAULT_CAP) -> bool:
    """Whether some Hamiltonian cycle of ``g`` contains every edge of ``forest``.

    Each forced path ``a ... b`` becomes a new vertex adjacent to ``a`` and
    ``b`` only; interior vertices disappear.  The direct edge ``ab`` is kept
    when the path has at least two edges (closing the path itself), and
    dropped for a single forced edge so it cannot be used twice.
    """
    if g.n < 3:
        return False
    if not forest:
        return is_hamiltonian(g, cap)
    paths = _forest_paths(forest)
    interior = set(v for p in paths for v in p[1:-1])
    keep = [v for v in range(g.n) if v not in interior]
    pos = {v: i for i, v in enumerate(keep)}
    m = len(keep) + len(paths)
    rows = [0] * m
    for u, v in g.edges():
        if u in pos and v in pos:
            rows[pos[u]] |= 1 << pos[v]
            rows[pos[v]] |= 1 << pos[u]
    for t, p in enumerate(paths):
        a, b = pos[p[0]], pos[p[-1]]
        if len(p) == 2:
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
        x = len(keep) + t
        rows[x] = (1 << a) | (1 << b)
        rows[a] |= 1 << x
        rows[b] |= 1 << x
    h = SimpleGraph._raw(m, rows)
    return is_hamiltonian(h, cap)


def q_edge_hamiltonian(g: SimpleGraph, q: int, cap: int = DEFAULT_CAP, budget: int = 200_000) -> bool:
    """Every linear forest with at most ``q`` edges (the empty one included)
    lies on a Hamiltonian cycle."""
    if q < 0 or q > g.n:
        raise ParameterError(f"Q_EDGE_HAM needs 0 <= q <= n, got q={q}")
    _check_cap(g, cap)
    done = 0
    for forest in linear_forests(g, q):
        done += 1
        if done > budget:
            raise CapacityError(f"more than {budget} linear forests")
        if not forced_hamiltonian(g, forest, cap):
            return False
    return True


def q_path_coverable(g: SimpleGraph, q: int, cap: int = DEFAULT_CAP) -> bool:
    return min_path_cover(g, cap) <= q


# -- bipartite (p, q) properties -------------------------------------------


def bipartite_qq(g: BipartiteGraph, prop, p: int, q: int, cap: int = DEFAULT_CAP) -> bool:
    """Deleting ``p`` vertices of ``U`` and ``q`` of ``V`` always leaves a
    Hamiltonian (``QQ_HAM``) or traceable (``QQ_TRACEABLE``, ``PQ_TRACEABLE``) graph."""
    prop = Property(prop)
    if prop in (Property.QQ_HAM, Property.QQ_TRACEABLE) and p != q:
        raise ParameterError(f"{prop.value} needs p = q")
    if not (0 <= p <= g.nL and 0 <= q <= g.nR):
        raise ParameterError("deletion sizes exceed the parts")
    left, right = g.nL - p, g.nR - q
    if prop == Property.QQ_HAM:
        if left != right:
            raise ParameterError(f"(p,q)-Hamiltonian needs |U|-p = |V|-q, got {left} vs {right}")
    elif prop in (Property.QQ_TRACEABLE, Property.PQ_TRACEABLE):
        if abs(left - right) > 1:
            raise ParameterError(f"(p,q)-traceable needs ||U|-p - (|V|-q)| <= 1, got {left} vs {right}")
        if left + right == 0:
            raise ParameterError("nothing left after deletion")
    else:
        raise ParameterError(f"bipartite_qq does not handle {prop}")
    s = g.as_simple()
    n = s.n
    if p == 0 and q == 0:
        return is_hamiltonian(s, cap) if prop == Property.QQ_HAM else is_traceable(s, cap)
    _check_cap(s, cap)
    full = (1 << n) - 1
    U = list(range(g.nL))
    V = list(range(g.nL, n))
    if prop == Property.QQ_HAM:
        table = cycle_table(s.adj_array())

        def good(mask):
            return bool(table[mask])
    else:
        count, _ = cover_table(s.adj_array())

        def good(mask):
            return count[mask] == 1
    for su in combinations(U, p):
        bu = sum(1 << v for v in su)
        for sv in combinations(V, q):
            bv = sum(1 << v for v in sv)
            if not good(full & ~(bu | bv)):
                return False
    return True


# -- connectivity ------------------------------------------------------------


def _max_flow(cap: list[dict[int, int]], s: int, t: int, limit: int | None = None) -> int:
    flow = 0
    n = len(cap)
    while limit is None or flow < limit:
        par = [-1] * n
        par[s] = s
        dq = deque([s])
        while dq and par[t] < 0:
            x = dq.popleft()
            for y, c in cap[x].items():
                if c > 0 and par[y] < 0:
                    par[y] = x
                    dq.append(y)
        if par[t] < 0:
            break
        y = t
        while y != s:
            x = par[y]
            cap[x][y] -= 1
            cap[y][x] = cap[y].get(x, 0) + 1
            y = x
        flow += 1
    return flow


def _local_vertex_conn(g: SimpleGraph, s: int, t: int) -> int:
    # split v into v_in = 2v, v_out = 2v+1
    n = g.n
    cap: list[dict[int, int]] = [dict() for _ in range(2 * n)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = 1 if v not in (s, t) else n
        cap[2 * v + 1].setdefault(2 * v, 0)
    for u, v in g.edges():
        for a, b in ((u, v), (v, u)):
            cap[2 * a + 1][2 * b] = n
            cap[2 * b].setdefault(2 * a + 1, 0)
    return _max_flow(cap, 2 * s + 1, 2 * t)


def vertex_connectivity(g: SimpleGraph) -> int:
    """``kappa(g)``: smallest vertex cut, ``n - 1`` for complete graphs."""
    if g.n < 1:
        raise ParameterError("need at least one vertex")
    if not is_connected(g):
        return 0
    best = g.n - 1
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                best = min(best, _local_vertex_conn(g, u, v))
    return best


def edge_connectivity(g: SimpleGraph) -> int:
    if g.n < 1:
        raise ParameterError("need at least one vertex")
    if g.n == 1:
        return 0
    best = None
    for v in range(1, g.n):
        cap: list[dict[int, int]] = [dict() for _ in range(g.n)]
        for a, b in g.edges():
            cap[a][b] = 1
            cap[b][a] = 1
        f = _max_flow(cap, 0, v, best)
        best = f if best is None else min(best, f)
        if best == 0:
            break
    return best


def cut_certificate(g: SimpleGraph) -> Certificate:
    """A minimum vertex cut (empty for disconnected or complete graphs)."""
    k = vertex_connectivity(g)
    if k == 0 or k == g.n - 1:
        return Certificate(CertKind.CUT, (), components=len(connected_components(g)))
    for size in (k,):
        for s in combinations(range(g.n), size):
            comps = len(connected_components(delete_vertices(g, VertexSet.of(s))))
            if comps > 1:
                return Certificate(CertKind.CUT, tuple(s), components=comps)
    raise AssertionError("no cut of the computed size")


# -- Kelmans -----------------------------------------------------------------


def kelmans_applicable(g: SimpleGraph, u: int, v: int) -> bool:
    if u == v:
        return False
    a = g.adj[v] & ~(g.adj[u] | 1 << u)
    b = g.adj[u] & ~(g.adj[v] | 1 << v)
    return bool(a) and bool(b)


def kelmans(g: SimpleGraph, u: int, v: int) -> SimpleGraph:
    """Move every edge ``vw`` with ``w`` in ``N(v) - N(u) - {u}`` to ``uw``."""
    if not kelmans_applicable(g, u, v):
        raise ParameterError(f"Kelmans transformation from {v} to {u} is not applicable")
    moved = g.adj[v] & ~(g.adj[u] | 1 << u)
    rows = list(g.adj)
    rows[v] &= ~moved
    rows[u] |= moved
    w = moved
    while w:
        x = _low(w)
        w &= w - 1
        rows[x] = (rows[x] & ~(1 << v)) | (1 << u)
    return SimpleGraph._raw(g.n, rows)


# -- large graphs: certificates both ways -----------------------------------------


def scattering_certificate(g: SimpleGraph, cycle: bool = False, max_size: int = 4,
                           budget: int = 200_000) -> Certificate | None:
    """A set ``S`` whose removal leaves more than ``|S| + 1`` components (no
    Hamiltonian path), or more than ``|S|`` (no Hamiltonian cycle).

    Candidates are neighbourhoods of small sets of low-degree vertices,
    followed by all sets of up to ``max_size`` vertices while the budget lasts.
    """
    slack = 0 if cycle else 1

    def test(sbits: int) -> Certificate | None:
        if sbits == (1 << g.n) - 1:
            return None
        c = len(connected_components(delete_vertices(g, sbits)))
        if c > len(VertexSet(sbits)) + slack:
            return Certificate(CertKind.CUT, tuple(VertexSet(sbits)), components=c)
        return None

    r = test(0)
    if r:
        return r
    deg = g.degrees()
    order = sorted(range(g.n), key=lambda v: (deg[v], v))
    low = order[: min(g.n, 12)]
    tried = 0
    for size in range(1, max_size + 2):
        for t in combinations(low, size):
            nb = 0
            for v in t:
                nb |= g.adj[v]
            tried += 1
            r = test(nb & ~sum(1 << v for v in t))
            if r:
                return r
    for size in range(1, max_size + 1):
        for s in combinations(range(g.n), size):
            tried += 1
            if tried > budget:
                return None
            r = test(sum(1 << v for v in s))
            if r:
                return r
    return None


def heuristic_hamiltonian_path(g: SimpleGraph, seed: int = 0, budget: int = 200_000) -> Certificate | None:
    """Seeded rotation-extension search; a returned path is always valid, a
    None answer proves nothing.

    The first attempts start at the lowest-degree vertices (forced path
    ends in near-extremal graphs); later ones start at random.  An attempt
    is abandoned after ``8n`` steps without growing the path.
    """
    n = g.n
    if n == 0:
        return None
    if n == 1:
        return Certificate(CertKind.PATH, (0,))
    deg = g.degrees()
    if min(deg) == 0 or sum(d == 1 for d in deg) > 2 or not is_connected(g):
        return None
    rng = np.random.default_rng(seed)
    nbr = [[w for w in range(n) if g.adj[v] >> w & 1] for v in range(n)]
    starts = sorted(range(n), key=lambda v: (deg[v], v))[: min(n, 8)]
    steps = 0
    attempt = 0
    while steps < budget and attempt < 64 + 8 * n:
        start = starts[attempt] if attempt < len(starts) else int(rng.integers(n))
        attempt += 1
        path = [start]
        on = 1 << start
        pos = {start: 0}
        stall = 0
        while steps < budget and stall < 8 * n:
            steps += 1
            end = path[-1]
            free = [w for w in nbr[end] if not on >> w & 1]
            if free:
                best = min(deg[w] for w in free)
                pick = [w for w in free if deg[w] == best]
                w = pick[int(rng.integers(len(pick)))]
                pos[w] = len(path)
                path.append(w)
                on |= 1 << w
                stall = 0
                if len(path) == n:
                    return Certificate(CertKind.PATH, tuple(path))
                continue
            stall += 1
            # rotate: end is adjacent to path[i]; reverse the tail after i
            rot = [pos[w] for w in nbr[end] if pos.get(w, -1) < len(path) - 2]
            if not rot:
                if any(not on >> w & 1 for w in nbr[path[0]]):
                    path.reverse()
                    pos = {v: i for i, v in enumerate(path)}
                    continue
                break
            i = rot[int(rng.integers(len(rot)))]
            path[i + 1:] = reversed(path[i + 1:])
            for j in range(i + 1, len(path)):
                pos[path[j]] = j
    return None


# -- dispatcher ---------------------------------------------------------------


def decide(g, query: PropertyQuery, cap: int = DEFAULT_CAP):
    """Run one query; returns ``(answer, certificate_or_None)``.

    ``answer`` is a bool for the yes/no properties and an int for
    connectivities and ``Q_PATH_COVER`` (the minimum number of paths).
    """
    prop = Property(query.prop)
    if prop in (Property.QQ_HAM, Property.QQ_TRACEABLE, Property.PQ_TRACEABLE):
        if not isinstance(g, BipartiteGraph):
            raise ParameterError(f"{prop.value} needs a bipartite input")
        p = query.q if query.p is None else query.p
        return bipartite_qq(g, prop, p, query.q, cap), None
    if isinstance(g, BipartiteGraph):
        g = g.as_simple()
    if prop == Property.HAM_CYCLE:
        c = hamiltonian_cycle(g, cap)
        return c is not None, c
    if prop == Property.HAM_PATH:
        c = hamiltonian_path(g, cap)
        return c is not None, c
    if prop == Property.HAM_CONNECTED:
        return hamilton_connected(g, cap), None
    if prop in (Property.Q_HAM, Property.Q_TRACEABLE, Property.Q_HAM_CONNECTED):
        return q_property(g, prop, query.q, cap), None
    if prop == Property.Q_EDGE_HAM:
        return q_edge_hamiltonian(g, query.q, cap), None
    if prop == Property.Q_PATH_COVER:
        c = path_cover_certificate(g, cap)
        return len(c.paths), c
    if prop == Property.VERTEX_CONN:
        return vertex_connectivity(g), cut_certificate(g)
    if prop == Property.EDGE_CONN:
        return edge_connectivity(g), None
    raise ParameterError(f"unhandled property {prop}")
