"""Graph carriers and structural operations.

A :class:`SimpleGraph` stores one neighbour bitset per vertex as a Python
``int``.  Python integers have no width limit, so graphs of any order use the
same single-int rows.  Everything here is immutable and pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, Graph6Error, ParameterError

KERNEL_MAX_N = 62  # widest row that fits an int64 bitset without touching the sign bit


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class VertexSet:
    """A set of vertex indices held as a bitmask."""

    bits: int = 0

    @classmethod
    def of(cls, items: Iterable[int]) -> "VertexSet":
        b = 0
        for v in items:
            if v < 0:
                raise ParameterError(f"negative vertex index {v}")
            b |= 1 << v
        return cls(b)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.bits)

    def __len__(self) -> int:
        return _popcount(self.bits)

    def __contains__(self, v: int) -> bool:
        return v >= 0 and bool(self.bits >> v & 1)

    def to_list(self) -> list[int]:
        return list(self)


def _as_bits(s) -> int:
    if isinstance(s, VertexSet):
        return s.bits
    if isinstance(s, (int, np.integer)):
        return int(s)
    return VertexSet.of(s).bits


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[u]`` has bit ``v`` set exactly when ``uv`` is an edge.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ParameterError(f"need exactly n={self.n} rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ParameterError(f"row {u} has bits outside 0..{self.n - 1}")
            if row >> u & 1:
                raise ParameterError(f"loop at vertex {u}")
            for v in _bits(row):
                if not self.adj[v] >> u & 1:
                    raise ParameterError(f"asymmetric pair ({u}, {v})")

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, n: int, adj: Sequence[int]) -> "SimpleGraph":
        """Build without validation; callers guarantee the invariants."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._raw(n, rows)

    @classmethod
    def from_matrix(cls, a) -> "SimpleGraph":
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n) or (a != a.T).any() or np.diagonal(a).any():
            raise ParameterError("matrix must be square, symmetric, zero diagonal")
        rows = [0] * n
        for u, v in zip(*np.nonzero(a)):
            rows[int(u)] |= 1 << int(v)
        return cls._raw(n, rows)

    # -- queries ------------------------------------------------------------
    @property
    def m(self) -> int:
        return sum(_popcount(r) for r in self.adj) // 2

    def degree(self, u: int) -> int:
        return _popcount(self.adj[u])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> VertexSet:
        return VertexSet(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def vertex_set(self) -> VertexSet:
        return VertexSet((1 << self.n) - 1)

    # -- array views ----------------------------------------------------
    def bool_matrix(self) -> np.ndarray:
        if 0 < self.n <= KERNEL_MAX_N:
            rows = np.array(self.adj, dtype=np.int64)
            return ((rows[:, None] >> np.arange(self.n, dtype=np.int64)) & 1).astype(np.bool_)
        a = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    @classmethod
    def _from_bool(cls, a: np.ndarray) -> "SimpleGraph":
        n = a.shape[0]
        if 0 < n <= KERNEL_MAX_N:
            w = np.int64(1) << np.arange(n, dtype=np.int64)
            return cls._raw(n, [int(x) for x in (a.astype(np.int64) * w).sum(axis=1)])
        rows = [0] * n
        for u, v in zip(*np.nonzero(a)):
            rows[int(u)] |= 1 << int(v)
        return cls._raw(n, rows)

    def matrix(self) -> np.ndarray:
        return self.bool_matrix().astype(np.float64)

    def adj_array(self) -> np.ndarray:
        """Rows as an int64 array, the input format of the subset kernels."""
        if self.n > KERNEL_MAX_N:
            raise CapacityError(f"bitset kernels support n <= {KERNEL_MAX_N}, got {self.n}")
        return np.array(self.adj, dtype=np.int64)

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m}, g6={graph6_encode(self)!r})"


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph ``[U, V]`` with ``|U| = nL`` and ``|V| = nR``.

    ``biadj[i]`` is the bitset of ``V`` indices adjacent to ``U`` vertex ``i``.
    In :meth:`as_simple`, ``U`` becomes ``0..nL-1`` and ``V`` becomes
    ``nL..nL+nR-1``.
    """

    nL: int
    nR: int
    biadj: tuple[int, ...]

    def __post_init__(self):
        if self.nL < 0 or self.nR < 0 or len(self.biadj) != self.nL:
            raise ParameterError("biadjacency must have nL rows")
        full = (1 << self.nR) - 1
        for i, row in enumerate(self.biadj):
            if row & ~full:
                raise ParameterError(f"row {i} has bits beyond nR={self.nR}")

    @classmethod
    def from_edges(cls, nL: int, nR: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows = [0] * nL
        for i, j in edges:
            if not (0 <= i < nL and 0 <= j < nR):
                raise ParameterError(f"edge ({i}, {j}) out of range")
            rows[i] |= 1 << j
        return cls(nL, nR, tuple(rows))

    @classmethod
    def complete(cls, nL: int, nR: int) -> "BipartiteGraph":
        return cls(nL, nR, tuple([(1 << nR) - 1] * nL))

    @classmethod
    def from_simple(cls, g: SimpleGraph, left) -> "BipartiteGraph":
        """Read ``g`` as bipartite with ``left`` as ``U``; both parts keep index order."""
        lb = _as_bits(left)
        U = [v for v in range(g.n) if lb >> v & 1]
        V = [v for v in range(g.n) if not lb >> v & 1]
        pos = {v: j for j, v in enumerate(V)}
        rows = []
        for u in U:
            if g.adj[u] & lb:
                raise ParameterError(f"edge inside the left part at vertex {u}")
            r = 0
            for v in _bits(g.adj[u]):
                r |= 1 << pos[v]
            rows.append(r)
        return cls(len(U), len(V), tuple(rows))

    @property
    def m(self) -> int:
        return sum(_popcount(r) for r in self.biadj)

    @property
    def is_balanced(self) -> bool:
        return self.nL == self.nR

    @property
    def is_almost_balanced(self) -> bool:
        return abs(self.nL - self.nR) == 1

    def left_degrees(self) -> list[int]:
        return [_popcount(r) for r in self.biadj]

    def right_degrees(self) -> list[int]:
        return [sum(r >> j & 1 for r in self.biadj) for j in range(self.nR)]

    def transpose(self) -> "BipartiteGraph":
        rows = [0] * self.nR
        for i, r in enumerate(self.biadj):
            for j in _bits(r):
                rows[j] |= 1 << i
        return BipartiteGraph(self.nR, self.nL, tuple(rows))

    def as_simple(self) -> SimpleGraph:
        n = self.nL + self.nR
        rows = [0] * n
        for i, r in enumerate(self.biadj):
            rows[i] = r << self.nL
            for j in _bits(r):
                rows[self.nL + j] |= 1 << i
        return SimpleGraph._raw(n, rows)

    def left_set(self) -> VertexSet:
        """``U`` as a vertex set of :meth:`as_simple`."""
        return VertexSet((1 << self.nL) - 1)

    def __repr__(self) -> str:
        return f"BipartiteGraph(nL={self.nL}, nR={self.nR}, m={self.m})"


# -- named graphs ------------------------------------------------------------


def complete_graph(n: int) -> SimpleGraph:
    full = (1 << n) - 1
    return SimpleGraph._raw(n, [full ^ (1 << u) for u in range(n)])


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph._raw(n, [0] * n)


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ParameterError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(p: int, q: int) -> SimpleGraph:
    """``K_{p,q}`` with the ``p`` side first."""
    return BipartiteGraph.complete(p, q).as_simple()


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)


def hypercube_graph(d: int) -> SimpleGraph:
    n = 1 << d
    return SimpleGraph.from_edges(n, [(u, u ^ (1 << b)) for u in range(n) for b in range(d) if u < u ^ (1 << b)])


# -- operations ---------------------------------------------------------------


def complement(g: SimpleGraph) -> SimpleGraph:
    full = (1 << g.n) - 1
    return SimpleGraph._raw(g.n, [full ^ r ^ (1 << u) for u, r in enumerate(g.adj)])


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """``g ∨ h``: vertices of ``g`` first, then ``h`` shifted by ``g.n``."""
    gl = (1 << g.n) - 1
    hl = ((1 << h.n) - 1) << g.n
    rows = [r | hl for r in g.adj] + [(r << g.n) | gl for r in h.adj]
    return SimpleGraph._raw(g.n + h.n, rows)


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    return SimpleGraph._raw(g.n + h.n, list(g.adj) + [r << g.n for r in h.adj])


def join_all(parts: Sequence[SimpleGraph]) -> SimpleGraph:
    out = empty_graph(0)
    for p in parts:
        out = join(out, p)
    return out


def union_all(parts: Sequence[SimpleGraph]) -> SimpleGraph:
    out = empty_graph(0)
    for p in parts:
        out = disjoint_union(out, p)
    return out


def induced(g: SimpleGraph, s) -> SimpleGraph:
    """``g[s]`` relabelled by increasing original index."""
    sb = _as_bits(s)
    if sb >> g.n:
        raise ParameterError("vertex set exceeds the graph")
    keep = list(_bits(sb))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = 0
        for w in _bits(g.adj[v] & sb):
            r |= 1 << pos[w]
        rows.append(r)
    return SimpleGraph._raw(len(keep), rows)


def delete_vertices(g: SimpleGraph, s) -> SimpleGraph:
    return induced(g, ((1 << g.n) - 1) & ~_as_bits(s))


def delete_edge(g: SimpleGraph, u: int, v: int) -> SimpleGraph:
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ParameterError(f"({u}, {v}) is not an edge")
    rows = list(g.adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return SimpleGraph._raw(g.n, rows)


def add_edge(g: SimpleGraph, u: int, v: int) -> SimpleGraph:
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise ParameterError(f"cannot add ({u}, {v})")
    rows = list(g.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return SimpleGraph._raw(g.n, rows)


def relabel(g: SimpleGraph, perm: Sequence[int]) -> SimpleGraph:
    """Send vertex ``v`` to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ParameterError("perm must be a permutation of 0..n-1")
    rows = [0] * g.n
    for u, v in g.edges():
        rows[perm[u]] |= 1 << perm[v]
        rows[perm[v]] |= 1 << perm[u]
    return SimpleGraph._raw(g.n, rows)


def is_subgraph(h: SimpleGraph, g: SimpleGraph) -> bool:
    """Same vertex labels, ``E(h) ⊆ E(g)``."""
    return h.n == g.n and all(a & ~b == 0 for a, b in zip(h.adj, g.adj))


def connected_components(g: SimpleGraph) -> list[VertexSet]:
    """Components ordered by smallest vertex."""
    left = (1 << g.n) - 1
    out = []
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(VertexSet(comp))
        left &= ~comp
    return out


def is_connected(g: SimpleGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def min_degree(g: SimpleGraph) -> int:
    if g.n == 0:
        raise ParameterError("minimum degree of the graph with no vertices is undefined")
    return min(g.degrees())


def max_degree(g: SimpleGraph) -> int:
    return max(g.degrees(), default=0)


def is_regular(g: SimpleGraph) -> int | None:
    """The common degree, or None when degrees differ (or ``n = 0``)."""
    d = g.degrees()
    if not d or any(x != d[0] for x in d):
        return None
    return d[0]


def two_coloring(g: SimpleGraph) -> VertexSet | None:
    """A colour class of a proper 2-colouring, or None if ``g`` is not bipartite.

    In every component the smallest vertex gets the returned colour.
    """
    colour = 0
    for comp in connected_components(g):
        start = comp.bits & -comp.bits
        side = [start, 0]
        frontier = start
        seen = start
        t = 0
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            if nxt & side[t]:
                return None
            frontier = nxt & ~seen
            seen |= frontier
            t ^= 1
            side[t] |= frontier
        if (side[0] | side[1]) != comp.bits:
            return None
        if any(g.adj[v] & side[0] for v in _bits(side[0])) or any(g.adj[v] & side[1] for v in _bits(side[1])):
            return None
        colour |= side[0]
    return VertexSet(colour)


def is_bipartite(g: SimpleGraph) -> bool:
    return two_coloring(g) is not None


def is_semiregular_bipartite(g: SimpleGraph) -> tuple[int, int, tuple[VertexSet, VertexSet]] | None:
    """``(p, q, (U, V))`` with ``p != q`` when ``g`` is (p,q)-semi-regular bipartite.

    ``U`` is the colour class that holds the smallest non-isolated vertex.
    Regular graphs give None, as does any graph with an isolated vertex and
    at least one edge (that vertex would force one side to degree 0).
    """
    if g.m == 0:
        return None
    deg = g.degrees()
    if 0 in deg:
        return None
    U = 0
    V = 0
    p = q = -1
    for comp in connected_components(g):
        sub = induced(g, comp)
        col = two_coloring(sub)
        if col is None:
            return None
        verts = comp.to_list()
        a_side = [verts[i] for i in col]
        b_side = [v for v in verts if v not in set(a_side)]
        da = {deg[v] for v in a_side}
        db = {deg[v] for v in b_side}
        if len(da) != 1 or len(db) != 1:
            return None
        a, b = da.pop(), db.pop()
        if a == b:
            return None
        if p < 0:
            p, q = a, b
        elif (a, b) == (q, p):
            a_side, b_side = b_side, a_side
        elif (a, b) != (p, q):
            return None
        U |= VertexSet.of(a_side).bits
        V |= VertexSet.of(b_side).bits
    return p, q, (VertexSet(U), VertexSet(V))


# -- graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 0:
        raise ParameterError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ParameterError("order too large for graph6")


def graph6_encode(g: SimpleGraph) -> str:
    """Standard graph6, no ``>>graph6<<`` header."""
    bits = []
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            bits.append(col >> i & 1)
    bits += [0] * (-len(bits) % 6)
    out = [_encode_n(g.n)]
    for t in range(0, len(bits), 6):
        v = 0
        for b in bits[t:t + 6]:
            v = v << 1 | b
        out.append(chr(v + 63))
    return "".join(out)


def graph6_decode(s: str) -> SimpleGraph:
    """Inverse of :func:`graph6_encode`; trailing newline is tolerated."""
    if isinstance(s, bytes):
        s = s.decode("ascii", errors="replace")
    s = s.rstrip("\r\n")
    if s.startswith(">>"):
        raise Graph6Error("graph6 header is not accepted", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the printable range 63..126", i)
    if not s:
        raise Graph6Error("empty string", 0)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 8-byte order field", len(s))
        n = 0
        for ch in s[2:8]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 8
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte order field", len(s))
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, found {len(body)}", len(s))
    if len(body) > need:
        raise Graph6Error("trailing bytes after the adjacency data", pos + need)
    rows = [0] * n
    i, j = 0, 1
    for t, ch in enumerate(body):
        v = ord(ch) - 63
        for k in range(5, -1, -1):
            idx = t * 6 + (5 - k)
            b = v >> k & 1
            if idx >= nbits:
                if b:
                    raise Graph6Error("nonzero padding bit", pos + t)
                continue
            if b:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return SimpleGraph._raw(n, rows)
