from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamspec.errors import Graph6Error, ParameterError
from hamspec.graph import (
    BipartiteGraph,
    SimpleGraph,
    VertexSet,
    complement,
    complete_bipartite,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_edge,
    disjoint_union,
    empty_graph,
    graph6_decode,
    graph6_encode,
    hypercube_graph,
    induced,
    is_connected,
    is_regular,
    is_semiregular_bipartite,
    join,
    min_degree,
    path_graph,
    petersen_graph,
)
from hamspec.verifier.enumeration import isomorphic


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def test_vertex_set_roundtrip():
    s = VertexSet.of([4, 1, 1, 7])
    assert s.to_list() == [1, 4, 7]
    assert len(s) == 3 and 4 in s and 2 not in s


def test_from_edges_rejects_bad_input():
    with pytest.raises(ParameterError):
        SimpleGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ParameterError):
        SimpleGraph.from_edges(3, [(0, 3)])


def test_complement_examples():
    assert complement(complete_graph(5)).m == 0
    assert isomorphic(complement(cycle_graph(5)), cycle_graph(5))
    g = complement(disjoint_union(complete_graph(3), complete_graph(2)))
    assert isomorphic(g, complete_bipartite(3, 2))


def test_join_examples():
    assert isomorphic(join(complete_graph(1), empty_graph(4)), complete_bipartite(1, 4))
    assert isomorphic(join(empty_graph(3), empty_graph(3)), complete_bipartite(3, 3))
    g = join(complete_graph(1), disjoint_union(complete_graph(2), complete_graph(2)))
    assert (g.n, g.m, min_degree(g)) == (5, 6, 2)


def test_induced_and_delete_edge():
    k33 = complete_bipartite(3, 3)
    assert isomorphic(induced(k33, VertexSet.of([0, 1, 3, 4])), cycle_graph(4))
    assert sorted(delete_edge(k33, 0, 3).degrees(), reverse=True) == [3, 3, 3, 3, 2, 2]
    with pytest.raises(ParameterError):
        delete_edge(k33, 0, 1)


def test_regularity():
    assert is_regular(cycle_graph(6)) == 2
    assert is_semiregular_bipartite(cycle_graph(6)) is None
    p, q, _ = is_semiregular_bipartite(complete_bipartite(1, 3))
    assert {p, q} == {1, 3}
    p, q, (a, b) = is_semiregular_bipartite(complete_bipartite(2, 4))
    assert (p, q) == (4, 2) and len(a) == 2 and len(b) == 4


def test_components():
    sizes = sorted(len(c) for c in connected_components(disjoint_union(complete_graph(3), complete_graph(2))))
    assert sizes == [2, 3]
    assert len(connected_components(complement(complete_bipartite(3, 3)))) == 2
    assert is_connected(petersen_graph()) and not is_connected(empty_graph(2))
    assert is_regular(hypercube_graph(3)) == 3


def test_graph6_known_strings():
    assert graph6_encode(complete_graph(3)) == "Bw"
    assert graph6_encode(empty_graph(5)) == "D??"
    assert graph6_decode("Bw") == complete_graph(3)
    assert isomorphic(graph6_decode("IheA@GUAo"), petersen_graph())


def test_graph6_large_order_header():
    g = path_graph(70)
    s = graph6_encode(g)
    assert s.startswith("~")
    assert graph6_decode(s) == g


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x01", "~??"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6_decode(bad)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_graph6_roundtrip(g):
    h = graph6_decode(graph6_encode(g))
    assert h == g


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_graph6_matches_networkx(g):
    ng = nx.empty_graph(g.n)
    ng.add_edges_from(g.edges())
    assert nx.to_graph6_bytes(ng, header=False).strip().decode() == graph6_encode(g)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_complement_involution_and_edge_count(g):
    c = complement(g)
    assert complement(c) == g
    assert g.m + c.m == g.n * (g.n - 1) // 2


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_matrix_views_agree(g):
    a = g.matrix()
    assert np.array_equal(a, a.T)
    assert int(a.sum()) == 2 * g.m
    assert list(a.sum(1)) == g.degrees()
    assert SimpleGraph.from_matrix(a) == g


def test_bipartite_views():
    b = BipartiteGraph.from_edges(2, 3, [(0, 0), (0, 2), (1, 1)])
    assert b.m == 3 and b.left_degrees() == [2, 1] and b.right_degrees() == [1, 1, 1]
    s = b.as_simple()
    assert s.n == 5 and s.has_edge(0, 2) and s.has_edge(0, 4) and s.has_edge(1, 3)
    assert b.transpose().transpose() == b
    assert BipartiteGraph.complete(3, 3).is_balanced
    assert BipartiteGraph.complete(4, 3).is_almost_balanced
    back = BipartiteGraph.from_simple(s, VertexSet.of([0, 1]))
    assert back == b
