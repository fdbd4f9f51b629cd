from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamspec.closure import k_closure
from hamspec.errors import CapacityError, ParameterError
from hamspec.families import build_F, build_F0, build_Z
from hamspec.graph import (
    BipartiteGraph,
    SimpleGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    empty_graph,
    graph6_decode,
    path_graph,
    petersen_graph,
)
from hamspec.oracles import (
    CertKind,
    Property,
    PropertyQuery,
    bipartite_qq,
    cut_certificate,
    decide,
    edge_connectivity,
    hamilton_connected,
    hamiltonian_cycle,
    hamiltonian_path,
    heuristic_hamiltonian_path,
    is_hamiltonian,
    is_traceable,
    kelmans,
    kelmans_applicable,
    min_path_cover,
    path_cover_certificate,
    q_edge_hamiltonian,
    q_property,
    scattering_certificate,
    vertex_connectivity,
)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def brute_path(g: SimpleGraph) -> bool:
    return any(all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in permutations(range(g.n)))


def brute_cycle(g: SimpleGraph) -> bool:
    if g.n < 3:
        return False
    return any(all(g.has_edge(p[i], p[(i + 1) % g.n]) for i in range(g.n))
               for p in permutations(range(g.n)) if p[0] == 0)


def brute_hc(g: SimpleGraph) -> bool:
    for u, v in combinations(range(g.n), 2):
        rest = [w for w in range(g.n) if w not in (u, v)]
        if not any(all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in
                   ((u, *mid, v) for mid in permutations(rest))):
            return False
    return True


def to_nx(g: SimpleGraph) -> nx.Graph:
    h = nx.empty_graph(g.n)
    h.add_edges_from(g.edges())
    return h


def test_petersen():
    p = petersen_graph()
    assert hamiltonian_cycle(p) is None
    c = hamiltonian_path(p)
    assert c is not None and c.validate(p)
    assert q_property(p, Property.Q_TRACEABLE, 1)


def test_small_named_graphs():
    k33 = complete_bipartite(3, 3)
    assert hamiltonian_cycle(k33).validate(k33)
    assert hamilton_connected(complete_graph(4))
    assert not hamilton_connected(k33)
    assert not q_property(k33, Property.Q_TRACEABLE, 2)
    assert not is_traceable(build_Z(8, 1, 6, 1).as_simple())


def test_path_cover_examples():
    assert min_path_cover(empty_graph(5)) == 5
    assert min_path_cover(path_graph(7)) == 1
    g = disjoint_union(complete_graph(3), complete_graph(2))
    assert min_path_cover(g) == 2
    assert path_cover_certificate(g).validate(g)


def test_edge_hamiltonian_examples():
    assert q_edge_hamiltonian(complete_graph(5), 2)
    assert q_edge_hamiltonian(cycle_graph(6), 1)
    assert q_edge_hamiltonian(cycle_graph(6), 2)
    assert q_edge_hamiltonian(cycle_graph(6), 0) == is_hamiltonian(cycle_graph(6))
    assert not q_edge_hamiltonian(path_graph(5), 0)


def test_edge_hamiltonian_closure_counterexample():
    # 1-edge-Hamiltonian, but its 7-closure adds 01 while vertex 5 keeps
    # neighbourhood {0, 1}; no Hamiltonian cycle can then use 01
    g = graph6_decode("E^n?")
    assert q_edge_hamiltonian(g, 1)
    cl, _ = k_closure(g, 7)
    assert cl.has_edge(0, 1) and not g.has_edge(0, 1)
    assert cl.neighbors(5).to_list() == [0, 1]
    assert not q_edge_hamiltonian(cl, 1)


def test_connectivity_examples():
    assert vertex_connectivity(complete_graph(5)) == 4
    assert vertex_connectivity(cycle_graph(7)) == edge_connectivity(cycle_graph(7)) == 2
    star = complete_bipartite(1, 3)
    assert vertex_connectivity(star) == edge_connectivity(star) == 1
    assert vertex_connectivity(empty_graph(3)) == 0
    c = cut_certificate(star)
    assert c.kind == CertKind.CUT and c.validate(star)


def test_bipartite_qq_examples():
    assert bipartite_qq(BipartiteGraph.complete(4, 4), Property.QQ_HAM, 2, 2)
    assert not bipartite_qq(build_F(8, 1, 1), Property.QQ_HAM, 0, 0)
    assert not bipartite_qq(build_F0(8, 1, 1), Property.QQ_HAM, 0, 0)
    with pytest.raises(ParameterError):
        bipartite_qq(BipartiteGraph.complete(4, 3), Property.QQ_HAM, 0, 0)
    with pytest.raises(ParameterError):
        bipartite_qq(BipartiteGraph.complete(4, 4), Property.QQ_HAM, 1, 0)


def test_cap_enforced():
    with pytest.raises(CapacityError):
        is_hamiltonian(cycle_graph(30))
    assert is_hamiltonian(cycle_graph(22), cap=24)


def test_q_range_checked():
    with pytest.raises(ParameterError):
        q_property(cycle_graph(5), Property.Q_HAM, 3)
    with pytest.raises(ParameterError):
        PropertyQuery(Property.Q_HAM, q=-1)


def test_decide_dispatch():
    ans, cert = decide(petersen_graph(), PropertyQuery(Property.HAM_PATH))
    assert ans and cert.validate(petersen_graph())
    assert decide(petersen_graph(), PropertyQuery(Property.VERTEX_CONN))[0] == 3
    assert decide(BipartiteGraph.complete(3, 3), PropertyQuery(Property.QQ_HAM, q=1))[0]


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_path_and_cycle_match_brute_force(g):
    p = hamiltonian_path(g)
    assert (p is not None) == brute_path(g)
    if p is not None:
        assert p.validate(g)
    c = hamiltonian_cycle(g)
    assert (c is not None) == brute_cycle(g)
    if c is not None:
        assert c.validate(g)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=6))
def test_hamilton_connected_matches_brute_force(g):
    assert hamilton_connected(g) == brute_hc(g)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=7), st.integers(0, 2))
def test_q_traceable_by_deletion(g, q):
    q = min(q, g.n - 1)
    want = all(brute_path(delete_vertices(g, sum(1 << v for v in s)))
               for r in range(q + 1) for s in combinations(range(g.n), r))
    assert q_property(g, Property.Q_TRACEABLE, q) == want


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_path_cover_certificate_is_minimal(g):
    k = min_path_cover(g)
    cert = path_cover_certificate(g)
    assert cert.validate(g) and len(cert.paths) == k
    assert (k == 1) == is_traceable(g)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_connectivity_matches_networkx(g):
    h = to_nx(g)
    assert vertex_connectivity(g) == nx.node_connectivity(h)
    assert edge_connectivity(g) == nx.edge_connectivity(h)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=3, max_n=9), st.data())
def test_kelmans_preserves_edge_count(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    if not kelmans_applicable(g, u, v):
        with pytest.raises(ParameterError):
            kelmans(g, u, v)
        return
    h = kelmans(g, u, v)
    assert h.m == g.m
    assert h.degree(u) > g.degree(u)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=9), st.integers(0, 100))
def test_heuristic_and_scattering_are_sound(g, seed):
    p = heuristic_hamiltonian_path(g, seed=seed)
    if p is not None:
        assert p.validate(g)
    cut = scattering_certificate(g)
    if cut is not None:
        assert cut.validate(g)
        assert hamiltonian_path(g) is None
