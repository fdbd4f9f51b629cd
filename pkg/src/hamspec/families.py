"""Named extremal graphs and the exception families.

Vertex ordering conventions (stable, so graph6 fixtures are reproducible):

* ``build_M(n, k, s)``: the ``K_s`` block, then ``K_{n-k-1}``, then ``K_{k+1-s}``.
* ``build_Z(n, k, p, q)``: ``U = X`` with ``|X| = n``; ``V = Y`` with
  ``|Y| = p + q``.  ``X1`` is the last ``n - k`` vertices of ``X``, ``Y1`` the
  last ``q`` vertices of ``Y``; every ``X1``-``Y1`` edge is absent.
* ``build_Z0``: ``Z`` minus the edge between ``X`` vertex ``k`` (the first
  ``X1`` vertex, degree ``p``) and ``Y`` vertex ``0`` (degree ``n``).  This is
  the lexicographically smallest eligible edge in :meth:`as_simple` labels.
* ``augment_v0``: the new vertex is the last ``V`` vertex.
* Join-built family members list the complemented part first, then the
  complete filler part.

Membership works on the complement: ``g = A ∨ B`` exactly when ``A`` and
``B`` are unions of components of ``complement(g)``.  Each family fixes one
or two components of the complement and leaves the rest free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import CapacityError, ParameterError
from .graph import (
    BipartiteGraph,
    SimpleGraph,
    VertexSet,
    complement,
    complete_bipartite,
    complete_graph,
    connected_components,
    disjoint_union,
    empty_graph,
    induced,
    is_connected,
    is_regular,
    is_semiregular_bipartite,
    join,
)
from .spectral import EIG_TOL, mu

TAGS = ("M", "Z", "Z0", "F", "F0", "B_FAM", "C_FAM", "H_FAM", "D_FAM", "W_FAM", "EX21")


def _need(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


# -- constructors ----------------------------------------------------------


def build_M(n: int, k: int, s: int) -> SimpleGraph:
    """``K_s ∨ (K_{n-k-1} ∪ K_{k+1-s})``, minimum degree ``k``."""
    _need(0 <= s <= k and 2 * k <= n + s - 2, f"M needs 0 <= s <= k <= (n+s-2)/2, got n={n} k={k} s={s}")
    return join(complete_graph(s), disjoint_union(complete_graph(n - k - 1), complete_graph(k + 1 - s)))


def build_Z(n: int, k: int, p: int, q: int) -> BipartiteGraph:
    _need(n > k >= 0, f"Z needs n > k >= 0, got n={n} k={k}")
    _need(p >= k + 1 and q >= 1, f"Z needs p >= k+1 and q >= 1, got p={p} q={q}")
    full = (1 << (p + q)) - 1
    y_low = (1 << p) - 1
    rows = tuple(full if x < k else y_low for x in range(n))
    return BipartiteGraph(n, p + q, rows)


def build_Z0(n: int, k: int, p: int, q: int) -> BipartiteGraph:
    z = build_Z(n, k, p, q)
    rows = list(z.biadj)
    rows[k] &= ~1
    return BipartiteGraph(z.nL, z.nR, tuple(rows))


def _f_params(n: int, k: int, s: int) -> tuple[int, int]:
    _need(k >= s, f"F needs k >= s, got k={k} s={s}")
    p, q = n + s - k - 1, k + 1 - s
    _need(p >= k + 1, f"F needs n+s-k-1 >= k+1, got n={n} k={k} s={s}")
    return p, q


def build_F(n: int, k: int, s: int) -> BipartiteGraph:
    """``Z_{n+s-k-1, k+1-s}``: balanced, ``2n`` vertices, minimum degree ``k``."""
    return build_Z(n, k, *_f_params(n, k, s))


def build_F0(n: int, k: int, s: int) -> BipartiteGraph:
    return build_Z0(n, k, *_f_params(n, k, s))


def augment_v0(g: BipartiteGraph) -> BipartiteGraph:
    """Add ``v0`` to the smaller side, adjacent to every vertex of ``U``."""
    _need(g.nL == g.nR + 1, f"augment_v0 needs nL = nR + 1, got {g.nL}, {g.nR}")
    bit = 1 << g.nR
    return BipartiteGraph(g.nL, g.nR + 1, tuple(r | bit for r in g.biadj))


def special_graph(k: int) -> SimpleGraph:
    """``complement(K_{1,k-1}) ∨ complement(K_{1,k-1})`` on ``2k`` vertices."""
    _need(k >= 2, "special graph needs k >= 2")
    h = complement(complete_bipartite(1, k - 1))
    return join(h, h)


# -- regular and semi-regular pieces ------------------------------------------


def regular_circulant(d: int, m: int) -> SimpleGraph:
    """Connected ``d``-regular circulant on ``m`` vertices (``d = 1`` only for ``m = 2``)."""
    _need(0 <= d < m, f"need 0 <= d < m, got d={d} m={m}")
    _need(d * m % 2 == 0, f"no {d}-regular graph on {m} vertices (odd degree sum)")
    if d == 0:
        return empty_graph(m)
    offsets = list(range(1, d // 2 + 1))
    if d % 2:
        offsets.append(m // 2)
    edges = {(min(i, (i + o) % m), max(i, (i + o) % m)) for i in range(m) for o in offsets}
    g = SimpleGraph.from_edges(m, edges)
    if is_regular(g) != d:
        raise ParameterError(f"circulant construction failed for d={d} m={m}")
    return g


def semiregular_bipartite(a: int, b: int, nU: int, nV: int, seed: int = 0) -> SimpleGraph:
    """Connected bipartite graph with ``U`` degrees ``a`` and ``V`` degrees ``b``.

    ``U`` is ``0..nU-1``.  Vertex ``i`` of ``U`` joins ``V`` vertices
    ``(i*a + t) mod nV`` for ``t < a``, which spreads ``a*nU`` edge ends evenly
    over ``V``.  If that graph is disconnected, seeded double-edge swaps are
    tried.
    """
    _need(a * nU == b * nV, "degree sums of the two sides differ")
    _need(0 < a <= nV and 0 < b <= nU, "degree exceeds the opposite side")
    rows = [0] * nU
    for i in range(nU):
        for t in range(a):
            rows[i] |= 1 << ((i * a + t) % nV)
    bg = BipartiteGraph(nU, nV, tuple(rows))
    g = bg.as_simple()
    if is_connected(g):
        return g
    rng = np.random.default_rng(seed)
    for _ in range(20000):
        i1, i2 = rng.integers(nU, size=2)
        if i1 == i2:
            continue
        only1 = [j for j in range(nV) if rows[i1] >> j & 1 and not rows[i2] >> j & 1]
        only2 = [j for j in range(nV) if rows[i2] >> j & 1 and not rows[i1] >> j & 1]
        if not only1 or not only2:
            continue
        j1, j2 = only1[rng.integers(len(only1))], only2[rng.integers(len(only2))]
        rows[i1] ^= (1 << j1) | (1 << j2)
        rows[i2] ^= (1 << j1) | (1 << j2)
        g = BipartiteGraph(nU, nV, tuple(rows)).as_simple()
        if is_connected(g):
            return g
    raise ParameterError(f"no connected ({a},{b})-semi-regular bipartite graph found on {nU}+{nV}")


def random_regular(d: int, m: int, seed: int, max_tries: int = 10000) -> SimpleGraph:
    """Seeded ``d``-regular simple graph by the pairing model with rejection.

    Dense requests are served as complements of sparse ones, which keeps the
    rejection rate low.
    """
    _need(0 <= d < m, f"need 0 <= d < m, got d={d} m={m}")
    _need(d * m % 2 == 0, f"no {d}-regular graph on {m} vertices (odd degree sum)")
    if d == 0:
        return empty_graph(m)
    if d == m - 1:
        return complete_graph(m)
    if d > (m - 1) / 2:
        return complement(random_regular(m - 1 - d, m, seed, max_tries))
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(m), d)
    for _ in range(max_tries):
        perm = rng.permutation(points)
        u, v = perm[0::2], perm[1::2]
        if (u == v).any():
            continue
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * m + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return SimpleGraph.from_edges(m, zip(lo.tolist(), hi.tolist()))
    raise CapacityError(f"pairing model rejected {max_tries} times for d={d} m={m}")


def build_example21(n: int, q: int, seed: int = 0) -> SimpleGraph:
    """``G1 ∨ ((n-q+2)/2) K_1`` with ``G1`` a seeded ``(q-2)``-regular graph
    on ``(n+q-2)/2`` vertices; ``G1`` comes first."""
    _need(q >= 2 and n >= 3 * q - 5 and (n + q) % 2 == 0, "example needs q >= 2, n >= 3q-5, n+q even")
    m1 = (n + q - 2) // 2
    _need(q - 2 < m1 and (q - 2) * m1 % 2 == 0, f"no {q - 2}-regular graph on {m1} vertices")
    return join(random_regular(q - 2, m1, seed), empty_graph((n - q + 2) // 2))


# -- descriptors --------------------------------------------------------------


@dataclass(frozen=True)
class FamilyDescriptor:
    """A family tag with its integer parameters."""

    tag: str
    params: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, tag: str, **params: int) -> "FamilyDescriptor":
        tag = tag.upper()
        _need(tag in TAGS, f"unknown family tag {tag!r}; choose from {TAGS}")
        return cls(tag, tuple(sorted((k, int(v)) for k, v in params.items())))

    def get(self, name: str, default=None):
        for k, v in self.params:
            if k == name:
                return v
        if default is None:
            raise ParameterError(f"{self.tag} needs parameter {name!r}")
        return default

    def as_dict(self) -> dict:
        return {"tag": self.tag, "params": dict(self.params)}


def r_range(tag: str, n: int, k: int | None, s: int) -> list[int]:
    """Admissible ``r`` for a family at ``(n, k, s)``."""
    if tag in ("B_FAM", "C_FAM"):
        return [r for r in range(0, s + 2) if r != 1]
    if tag == "H_FAM":
        return list(range(0, (k or 0) + 1))
    if tag == "D_FAM":
        return list(range(0, s))
    if tag == "W_FAM":
        return list(range(0, (n + s - 1) // 2 + 1))
    raise ParameterError(f"{tag} has no r parameter")


def _check_h_params(n: int, k: int, s: int):
    _need(n == 2 * k + 1 - s and s <= 1, f"H family needs n = 2k+1-s and s <= 1, got n={n} k={k} s={s}")


def build_member(desc: FamilyDescriptor, seed: int = 0) -> SimpleGraph | BipartiteGraph:
    """A representative of ``desc``; join-built members use a complete filler."""
    t = desc.tag
    g = desc.get
    if t == "M":
        return build_M(g("n"), g("k"), g("s"))
    if t == "Z":
        return build_Z(g("n"), g("k"), g("p"), g("q"))
    if t == "Z0":
        return build_Z0(g("n"), g("k"), g("p"), g("q"))
    if t == "F":
        return build_F(g("n"), g("k"), g("s"))
    if t == "F0":
        return build_F0(g("n"), g("k"), g("s"))
    if t == "EX21":
        return build_example21(g("n"), g("q"), seed)
    n, s, r = g("n"), g("s"), g("r")
    if t == "B_FAM":
        k = g("k")
        if s == -1:
            _need(r == 0, "B family at s=-1 only has r=0")
            return disjoint_union(complete_graph(n - k - 1), complete_graph(k + 1))
        _need(r in r_range(t, n, k, s), f"r={r} outside 0..s+1 without 1")
        return _semireg_member(k - s, n - k - 1, n - s - 1 + r, s + 1 - r, seed)
    if t == "C_FAM":
        p = g("p")
        if s == -1:
            _need(r == 0 and 1 <= p <= n / 2, "C family at s=-1 is K_p ∪ K_{n-p}, 1 <= p <= n/2")
            return disjoint_union(complete_graph(p), complete_graph(n - p))
        _need(r in r_range(t, n, None, s), f"r={r} outside 0..s+1 without 1")
        _need(1 <= p <= (n - s - 1) / 2, "C family needs 1 <= p <= (n-s-1)/2")
        return _semireg_member(p, n - s - 1 - p, n - s - 1 + r, s + 1 - r, seed)
    if t == "H_FAM":
        k = g("k")
        _check_h_params(n, k, s)
        _need(0 <= r <= k, "H family needs 0 <= r <= k")
        return join(regular_circulant(r, n - k + r), complete_graph(k - r))
    if t == "W_FAM":
        _need((n - s - 1) % 2 == 0, "W family needs n-s-1 even")
        d = (n - s - 1) // 2
        _need(r in r_range(t, n, None, s), "r outside 0..(n+s-1)/2")
        return join(complement(regular_circulant(d, n - r)), complete_graph(r))
    if t == "D_FAM":
        _need((n - s - 1) % 2 == 0, "D family needs n-s-1 even")
        d = (n - s - 1) // 2
        _need(r in r_range(t, n, None, s), "D family needs 0 <= r <= s-1")
        a = desc.get("p", 0) or (n - r) // 2
        b = n - r - a
        _need(a > d and b > d, f"parts {a}, {b} too small for {d}-regular pieces")
        g1 = complement(regular_circulant(d, a))
        g2 = complement(regular_circulant(d, b))
        return join(join(g1, g2), complete_graph(r))
    raise ParameterError(f"no constructor for {t}")


def _semireg_member(a: int, b: int, order: int, filler: int, seed: int) -> SimpleGraph:
    # U degree a, V degree b, |U| + |V| = order, a|U| = b|V|
    _need(a != b and a > 0 and b > 0, f"semi-regular part needs distinct positive degrees, got {a}, {b}")
    _need(order * b % (a + b) == 0, f"no ({a},{b})-semi-regular bipartite graph on {order} vertices")
    nU = order * b // (a + b)
    nV = order - nU
    g1 = semiregular_bipartite(a, b, nU, nV, seed)
    return join(complement(g1), complete_graph(filler))


# -- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class MembershipWitness:
    """Join factors of ``g`` plus what was certified about each.

    ``parts`` are the vertex sets of the join factors; ``pieces`` the
    induced subgraphs of ``g`` on them (same order).  ``roles`` says what
    each factor was shown to be.
    """

    n: int
    family: FamilyDescriptor
    parts: tuple[VertexSet, ...]
    pieces: tuple[SimpleGraph, ...]
    roles: tuple[str, ...]

    def reassemble(self) -> SimpleGraph:
        rows = [0] * self.n
        full = (1 << self.n) - 1
        for part, piece in zip(self.parts, self.pieces):
            verts = part.to_list()
            for i, v in enumerate(verts):
                r = full & ~part.bits
                for j in range(piece.n):
                    if piece.adj[i] >> j & 1:
                        r |= 1 << verts[j]
                rows[v] = r
        return SimpleGraph._raw(self.n, rows)

    def as_dict(self) -> dict:
        return {
            "family": self.family.as_dict(),
            "parts": [p.to_list() for p in self.parts],
            "roles": list(self.roles),
        }


def _witness(g: SimpleGraph, desc: FamilyDescriptor, parts: list[int], roles: list[str]) -> MembershipWitness:
    parts_vs = [VertexSet(b) for b in parts if b]
    roles = [r for b, r in zip(parts, roles) if b]
    pieces = tuple(induced(g, p) for p in parts_vs)
    w = MembershipWitness(g.n, desc, tuple(parts_vs), pieces, tuple(roles))
    if w.reassemble() != g:
        raise AssertionError("witness does not reassemble the input graph")
    return w


def _two_cliques(g: SimpleGraph, desc: FamilyDescriptor, sizes_ok) -> MembershipWitness | None:
    # the degenerate clauses are disjoint unions of two cliques, not joins
    comps = connected_components(g)
    if len(comps) != 2 or not sizes_ok(len(comps[0]), len(comps[1])):
        return None
    if any(is_regular(induced(g, c)) != len(c) - 1 for c in comps):
        return None
    role = f"K_{len(comps[0])} ∪ K_{len(comps[1])} on parts {comps[0].to_list()} / {comps[1].to_list()}"
    return _witness(g, desc, [(1 << g.n) - 1], [role])


def _mu_ok(gc: SimpleGraph, rest: int, bound: float) -> tuple[bool, float]:
    if not rest:
        return True, 0.0
    h = induced(gc, rest)
    val = mu(h) if h.n else 0.0
    return val <= bound + EIG_TOL * max(1.0, bound), val


def _semireg_component(gc: SimpleGraph, comps: list[VertexSet], size: int, degrees_ok) -> tuple[int, str] | None:
    for c in comps:
        if len(c) != size:
            continue
        sub = induced(gc, c)
        sr = is_semiregular_bipartite(sub)
        if sr is not None and degrees_ok(sr[0], sr[1]):
            return c.bits, f"complement of connected ({sr[0]},{sr[1]})-semi-regular bipartite graph on {size} vertices"
    return None


def membership(g: SimpleGraph, desc: FamilyDescriptor, check_range: bool = True) -> MembershipWitness | None:
    """Witness that ``g`` lies in the family ``desc``, or None.

    Handles the five exception families; for the named single graphs use
    an isomorphism test instead.  Out-of-range parameters raise
    :class:`ParameterError`.  ``check_range=False`` lets the B and C
    families take any ``0 <= r <= s+1`` (used for diagnostics only).
    """
    t = desc.tag
    n = desc.get("n")
    if g.n != n:
        return None
    gc = complement(g)
    comps = connected_components(gc)
    full = (1 << n) - 1
    s, r = desc.get("s"), desc.get("r")

    if t == "B_FAM":
        k = desc.get("k")
        if s == -1:
            _need(r == 0, "B family at s=-1 only has r=0")
            w = _two_cliques(g, desc, lambda a, b: sorted((a, b)) == sorted((n - k - 1, k + 1)))
            return w
        _need(r in r_range(t, n, k, s) or (not check_range and 0 <= r <= s + 1), f"r={r} outside 0..s+1 without 1")
        lo, hi = sorted((k - s, n - k - 1))
        hit = _semireg_component(gc, comps, n - s - 1 + r, lambda p, q: sorted((p, q)) == [lo, hi])
        if hit is None:
            return None
        return _witness(g, desc, [hit[0], full & ~hit[0]], [hit[1], f"spanning subgraph of K_{s + 1 - r}"])

    if t == "C_FAM":
        if s == -1:
            _need(r == 0, "C family at s=-1 only has r=0")
            return _two_cliques(g, desc, lambda a, b: 1 <= min(a, b))
        _need(r in r_range(t, n, None, s) or (not check_range and 0 <= r <= s + 1), f"r={r} outside 0..s+1 without 1")
        tot = n - s - 1

        def ok(p, q):
            return p + q == tot and 1 <= min(p, q) <= tot / 2

        hit = _semireg_component(gc, comps, tot + r, ok)
        if hit is None:
            return None
        return _witness(g, desc, [hit[0], full & ~hit[0]], [hit[1], f"spanning subgraph of K_{s + 1 - r}"])

    if t == "H_FAM":
        k = desc.get("k")
        _check_h_params(n, k, s)
        _need(0 <= r <= k, "H family needs 0 <= r <= k")
        want_deg, want_size = n - k - 1, n - k + r
        reg = [c for c in comps if is_regular(induced(gc, c)) == want_deg]
        chosen = _subset_with_size(reg, want_size)
        if chosen is None:
            return None
        return _witness(g, desc, [chosen, full & ~chosen],
                        [f"{r}-regular graph on {want_size} vertices", f"spanning subgraph of K_{k - r}"])

    if t in ("D_FAM", "W_FAM"):
        if t == "W_FAM" and s == -1 and r == 0:
            if n % 2 == 0 and is_regular(g) == n // 2 - 1:
                return _witness(g, desc, [full], [f"({n // 2 - 1})-regular graph"])
            return None
        _need(r in r_range(t, n, None, s), f"r={r} outside the admissible range for {t}")
        if (n - s - 1) % 2:
            return None
        d = (n - s - 1) // 2
        bound = float(n - s - 1)
        reg = [c for c in comps if is_regular(induced(gc, c)) == d]
        if t == "W_FAM":
            for c in reg:
                if len(c) == n - r:
                    ok, val = _mu_ok(gc, full & ~c.bits, bound)
                    if ok:
                        return _witness(g, desc, [c.bits, full & ~c.bits],
                                        [f"complement of connected {d}-regular graph on {n - r} vertices",
                                         f"spanning subgraph of K_{r} with mu(complement) = {val:.6g}"])
            return None
        for c1, c2 in combinations(reg, 2):
            if len(c1) + len(c2) == n - r:
                rest = full & ~(c1.bits | c2.bits)
                ok, val = _mu_ok(gc, rest, bound)
                if ok:
                    return _witness(g, desc, [c1.bits, c2.bits, rest],
                                    [f"complement of connected {d}-regular graph on {len(c1)} vertices",
                                     f"complement of connected {d}-regular graph on {len(c2)} vertices",
                                     f"spanning subgraph of K_{r} with mu(complement) = {val:.6g}"])
        return None

    raise ParameterError(f"membership is decided for the exception families only, not {t}")


def _subset_with_size(comps: list[VertexSet], size: int) -> int | None:
    """Union of some of ``comps`` with exactly ``size`` vertices (smallest-index first)."""
    reach = {0: 0}
    for c in comps:
        for tot, bits in list(reach.items()):
            nt = tot + len(c)
            if nt <= size and nt not in reach:
                reach[nt] = bits | c.bits
    return reach.get(size)


def member_any_r(g: SimpleGraph, tag: str, n: int, s: int, k: int | None = None,
                 p_values: Iterable[int] | None = None) -> MembershipWitness | None:
    """Membership for some admissible ``r`` (and ``p`` for the C family)."""
    if tag == "H_FAM" and not (n == 2 * k + 1 - s and s <= 1):
        return None
    for r in r_range(tag, n, k, s):
        if tag == "B_FAM" and s == -1 and r != 0:
            continue
        extra = {"k": k} if k is not None else {}
        if tag == "C_FAM":
            extra["p"] = 1
        if tag == "C_FAM" and s == -1 and r != 0:
            continue
        w = membership(g, FamilyDescriptor.of(tag, n=n, s=s, r=r, **extra))
        if w is not None:
            return w
    return None


# -- containment in Z ---------------------------------------------------------


def contained_in_Z(g: BipartiteGraph, k: int, p: int, q: int) -> tuple[str, tuple[int, ...]] | None:
    """Whether ``g ⊆ Z_{p,q}`` for some labelling that respects the parts.

    ``Z_{p,q}`` (built on ``X`` of size ``|X|``) leaves ``q`` vertices of
    ``Y`` with all neighbours inside a ``k``-set of ``X``.  So ``g`` embeds
    exactly when one side of size ``p + q`` (opposite side of any size, as
    ``|X| = n``) has ``q`` vertices whose neighbourhoods together have at
    most ``k`` vertices.  Returns ``(side, those vertices)`` or None.
    """
    out = None
    for side, bg in (("V", g), ("U", g.transpose())):
        if bg.nR != p + q:
            continue
        cols = [0] * bg.nR
        for i, row in enumerate(bg.biadj):
            for j in range(bg.nR):
                if row >> j & 1:
                    cols[j] |= 1 << i
        cand = [j for j in range(bg.nR) if bin(cols[j]).count("1") <= k]
        if len(cand) < q:
            continue
        if math.comb(len(cand), q) > 2_000_000:
            raise CapacityError("too many candidate subsets for the containment test")
        for combo in combinations(cand, q):
            acc = 0
            for j in combo:
                acc |= cols[j]
            if bin(acc).count("1") <= k:
                return side, combo
    return out


def contained_in_F(g: BipartiteGraph, k: int, s: int) -> tuple[str, tuple[int, ...]] | None:
    p, q = _f_params(g.nL, k, s)
    return contained_in_Z(g, k, p, q)
