from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamspec.errors import ParameterError
from hamspec.families import (
    FamilyDescriptor,
    augment_v0,
    build_example21,
    build_F,
    build_F0,
    build_M,
    build_member,
    build_Z,
    build_Z0,
    contained_in_F,
    member_any_r,
    membership,
    random_regular,
    regular_circulant,
    semiregular_bipartite,
    special_graph,
)
from hamspec.graph import (
    BipartiteGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_edge,
    disjoint_union,
    hypercube_graph,
    is_connected,
    is_regular,
    is_semiregular_bipartite,
    join,
    min_degree,
    relabel,
)
from hamspec.oracles import Property, is_traceable, q_property
from hamspec.verifier.enumeration import isomorphic


def test_M_examples():
    g = build_M(5, 2, 1)
    assert (g.n, g.m, min_degree(g)) == (5, 6, 2)
    assert isomorphic(build_M(6, 2, 0), disjoint_union(complete_graph(3), complete_graph(3)))
    assert isomorphic(build_M(5, 0, 0), disjoint_union(complete_graph(4), complete_graph(1)))


def test_Z_and_F_counts():
    z = build_Z(6, 1, 4, 2)
    assert z.m == 26 and sorted(z.right_degrees())[:2] == [1, 1]
    assert build_F(6, 1, 0) == z
    assert build_F0(6, 1, 0).m == 25 == 6 * 6 - 2 * 5 - 1
    assert build_Z0(6, 1, 4, 2).m == 25
    assert build_F(7, 1, 0).m == 37
    assert build_F(32, 2, 0).m == 934
    f = build_F(8, 1, 1)
    assert (f.nL, f.nR) == (8, 8) and sorted(f.right_degrees())[0] == 1


@pytest.mark.parametrize("nks", [(8, 1, 0), (8, 2, 1), (10, 3, 2)])
def test_F_min_degree_is_k(nks):
    assert min_degree(build_F(*nks).as_simple()) == nks[1]
    assert min_degree(build_F0(*nks).as_simple()) == nks[1]


def test_F_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        build_F(8, 1, 2)
    with pytest.raises(ParameterError):
        build_F(4, 2, 0)


def test_augment():
    p3 = BipartiteGraph.from_edges(2, 1, [(0, 0), (1, 0)])
    assert isomorphic(augment_v0(p3).as_simple(), cycle_graph(4))
    z = build_Z(8, 1, 6, 1)
    a = augment_v0(z)
    assert (a.nL, a.nR) == (8, 8) and a.right_degrees()[-1] == 8
    with pytest.raises(ParameterError):
        augment_v0(BipartiteGraph.complete(3, 3))


def test_example21():
    g = build_example21(6, 2)
    assert isomorphic(g, complete_bipartite(3, 3))
    assert not q_property(g, Property.Q_TRACEABLE, 2)
    assert is_regular(build_example21(8, 2, seed=3)) == 4


def test_special_graph():
    g = special_graph(3)
    assert g.n == 6 and g.m == 1 + 1 + 9


def test_regular_builders():
    assert random_regular(0, 5, 1).m == 0
    assert random_regular(4, 5, 1) == complete_graph(5)
    g = random_regular(2, 8, 11)
    assert is_regular(g) == 2
    assert is_regular(regular_circulant(3, 8)) == 3 and is_connected(regular_circulant(3, 8))
    with pytest.raises(ParameterError):
        random_regular(3, 7, 0)
    h = semiregular_bipartite(2, 3, 6, 4)
    assert is_connected(h)
    assert {p for p in is_semiregular_bipartite(h)[:2]} == {2, 3}


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 5), st.integers(6, 14), st.integers(0, 2**31))
def test_random_regular_degrees(d, m, seed):
    if d >= m or d * m % 2:
        return
    assert is_regular(random_regular(d, m, seed)) == d


def test_membership_examples():
    two_tri = disjoint_union(complete_graph(3), complete_graph(3))
    assert membership(two_tri, FamilyDescriptor.of("B_FAM", n=6, k=2, s=-1, r=0)) is not None
    assert membership(complete_bipartite(3, 3), FamilyDescriptor.of("D_FAM", n=6, s=1, r=0)) is not None
    assert membership(hypercube_graph(3), FamilyDescriptor.of("W_FAM", n=8, s=-1, r=0)) is not None
    assert membership(cycle_graph(8), FamilyDescriptor.of("W_FAM", n=8, s=-1, r=0)) is None


def test_membership_rejects_out_of_range():
    with pytest.raises(ParameterError):
        membership(complete_graph(6), FamilyDescriptor.of("B_FAM", n=6, k=2, s=1, r=1))
    with pytest.raises(ParameterError):
        FamilyDescriptor.of("NOPE", n=3)


MEMBERS = [
    ("B_FAM", dict(n=6, k=2, s=1, r=0)),
    ("B_FAM", dict(n=9, k=4, s=2, r=3)),
    ("B_FAM", dict(n=9, k=3, s=1, r=0)),
    ("C_FAM", dict(n=6, s=1, r=0, p=1)),
    ("C_FAM", dict(n=9, s=2, r=3, p=2)),
    ("H_FAM", dict(n=5, k=2, s=0, r=1)),
    ("H_FAM", dict(n=6, k=3, s=1, r=2)),
    ("W_FAM", dict(n=6, s=1, r=1)),
    ("W_FAM", dict(n=9, s=2, r=3)),
    ("D_FAM", dict(n=8, s=1, r=0)),
    ("D_FAM", dict(n=9, s=2, r=1)),
]


@pytest.mark.parametrize("tag,params", MEMBERS)
def test_member_roundtrip(tag, params):
    desc = FamilyDescriptor.of(tag, **params)
    g = build_member(desc, seed=5)
    w = membership(g, desc)
    assert w is not None
    assert w.reassemble() == g
    assert sum(len(p) for p in w.parts) == g.n


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MEMBERS), st.randoms(use_true_random=False))
def test_membership_invariant_under_relabelling(member, rnd):
    tag, params = member
    desc = FamilyDescriptor.of(tag, **params)
    g = build_member(desc)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert membership(relabel(g, perm), desc) is not None


def test_member_any_r_misses_complete():
    assert member_any_r(complete_graph(6), "B_FAM", 6, 1, k=2) is None
    assert member_any_r(build_member(FamilyDescriptor.of("W_FAM", n=6, s=1, r=1)), "W_FAM", 6, 1) is not None


def test_contained_in_F():
    f = build_F(7, 1, 0)
    assert contained_in_F(f, 1, 0) is not None
    assert contained_in_F(build_F0(7, 1, 0), 1, 0) is not None
    assert contained_in_F(BipartiteGraph.complete(7, 7), 1, 0) is None


def test_Z61_not_traceable():
    z = build_Z(8, 1, 6, 1)
    assert z.nL + z.nR == 15
    assert not is_traceable(z.as_simple())


def test_extremal_near_complete_is_not_member():
    g = delete_edge(complete_graph(6), 0, 1)
    assert join(complete_graph(0), g) == g
    assert member_any_r(g, "C_FAM", 6, 1) is None
