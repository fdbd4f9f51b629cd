from __future__ import annotations

import json
from itertools import permutations
from pathlib import Path

import jsonschema
import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamspec.errors import CapacityError, ParameterError
from hamspec.graph import SimpleGraph, complete_bipartite, cycle_graph, path_graph, relabel
from hamspec.verifier import (
    REGISTRY,
    AuditReport,
    Mode,
    TheoremSpec,
    audit,
    canonical_form,
    enumerate_bipartite,
    enumerate_graphs,
    inequality_audit,
    isomorphic,
    sandwich_audit,
)
from hamspec.verifier.enumeration import bipartite_isomorphic, graph_from_mask, mask_of_graph
from hamspec.verifier.report import compare

SCHEMA = json.loads((Path(__file__).parents[1] / "src/hamspec/data/audit_report.schema.json").read_text())

# Unlabelled graph counts on n vertices (OEIS A000088).
UNLABELLED = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}


def run(id, mode, budget=None, **params):
    return audit(TheoremSpec.of(id, **params), Mode(mode), budget=budget)


# -- enumeration -----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_canonical_forms_count_isomorphism_classes(n):
    forms = {canonical_form(g) for _, g in enumerate_graphs(n)}
    assert len(forms) == UNLABELLED[n]


def test_enumeration_min_degree_filter():
    got = sum(1 for _ in enumerate_graphs(5, min_degree=2))
    want = sum(1 for _, g in enumerate_graphs(5) if min(g.degrees()) >= 2)
    assert got == want
    assert sum(1 for _ in enumerate_bipartite(2, 3)) == 64


def test_enumeration_caps():
    with pytest.raises(CapacityError):
        next(enumerate_graphs(9))
    with pytest.raises(CapacityError):
        next(enumerate_bipartite(5, 6))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1))),
       st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(nm, rnd):
    n, mask = nm
    g = graph_from_mask(n, mask)
    assert mask_of_graph(g) == mask
    perm = list(range(n))
    rnd.shuffle(perm)
    assert canonical_form(relabel(g, perm)) == canonical_form(g)


def test_isomorphic_falls_back_beyond_canonical_range():
    a, b = cycle_graph(10), relabel(cycle_graph(10), [3, 1, 4, 0, 5, 9, 2, 6, 8, 7])
    assert isomorphic(a, b)
    assert not isomorphic(a, path_graph(10))


def test_bipartite_isomorphic_allows_side_swap():
    from hamspec.graph import BipartiteGraph
    a = BipartiteGraph.from_edges(2, 3, [(0, 0), (1, 1), (1, 2)])
    assert bipartite_isomorphic(a, a.transpose())
    assert not bipartite_isomorphic(a, BipartiteGraph.from_edges(2, 3, [(0, 0), (0, 1), (0, 2)]))


# -- comparisons and reports ---------------------------------------------------------------


def test_compare_tolerance_and_band():
    assert compare(1.0, 1.0, "le") == (True, True)
    assert compare(1.0 + 5e-10, 1.0, "le")[0]
    assert not compare(1.0, 1.0, "lt")[0]
    assert compare(1.0, 1.0 + 1e-6, "lt") == (True, False)
    with pytest.raises(ParameterError):
        compare(0, 0, "eq")


def test_report_merge_is_additive():
    spec = TheoremSpec.of("PETERSEN_FACTS")
    a, b = AuditReport(spec, Mode.SAMPLED), AuditReport(spec, Mode.SAMPLED)
    a.graphs_checked, b.graphs_checked = 3, 4
    a.branch("x")
    b.branch("x", 2)
    b.fail({"i": 1})
    m = a.merge(b)
    assert m.graphs_checked == 7 and m.branches == {"x": 3} and m.status == "fail" and m.exit_code == 2


def test_unknown_parameter_rejected():
    with pytest.raises(ParameterError, match="does not take"):
        run("STAB_W01P", "EXHAUSTIVE", n=4, property="traceable", q=0, bogus=1)
    with pytest.raises(ParameterError):
        run("NOPE", "EXHAUSTIVE")


def test_registry_modes_declared():
    assert len(REGISTRY) == 26
    for cls in REGISTRY.values():
        assert cls.modes


# -- small audits against independent recomputation ---------------------------------------


def _nx_closure(g: SimpleGraph, k: int) -> nx.Graph:
    h = nx.empty_graph(g.n)
    h.add_edges_from(g.edges())
    changed = True
    while changed:
        changed = False
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not h.has_edge(u, v) and h.degree(u) + h.degree(v) >= k:
                    h.add_edge(u, v)
                    changed = True
    return h


def _traceable(h: nx.Graph) -> bool:
    return any(all(h.has_edge(a, b) for a, b in zip(p, p[1:])) for p in permutations(h.nodes))


def test_stability_counts_match_independent_recount():
    n = 5
    want = {"both_false": 0, "both_true": 0, "closed_already": 0}
    for _, g in enumerate_graphs(n):
        c = _nx_closure(g, n - 1)
        if c.number_of_edges() == g.m:
            want["closed_already"] += 1
        else:
            t = _traceable(c)
            h = nx.empty_graph(n)
            h.add_edges_from(g.edges())
            assert _traceable(h) == t
            want["both_true" if t else "both_false"] += 1
    r = run("STAB_W01P", "EXHAUSTIVE", n=n, property="traceable", q=0)
    assert r.status == "pass" and r.graphs_checked == 1024
    assert r.branches == want == {"both_false": 105, "both_true": 632, "closed_already": 287}


def test_edge_hamiltonian_stability_mismatch_is_reported():
    r = run("STAB_W01P", "EXHAUSTIVE", n=5, property="edge-ham", q=1)
    assert r.status == "fail" and r.failure_count == 30
    one_way = run("STAB_W01P", "EXHAUSTIVE", n=5, property="edge-ham", q=1, sense="closure_to_graph")
    assert one_way.status == "pass" and one_way.branches["graph_only"] == 30


def test_small_frozen_audits():
    r = run("LEM_71L", "EXHAUSTIVE", n=3, q=0)
    assert r.status == "pass" and r.hypothesis_hits == 13
    r = run("LEM_71L", "EXHAUSTIVE", n=4, q=1)
    assert r.status == "pass" and r.hypothesis_hits == 73
    r = run("PROP_11P", "EXHAUSTIVE", n=3, property="ham", q=0)
    assert r.status == "pass" and r.branches == {"both_false": 81, "both_true": 33, "closed_already": 398}
    r = run("LEM_52L", "GRID", max_total=10)
    assert r.status == "pass" and r.hypothesis_hits == 160


def test_semiregular_order_small_matches_networkx():
    r = run("LEM_22L", "GRID", max_order=7)
    assert r.status == "pass" and r.failure_count == 0
    assert r.branches == {"disconnected": 14, "regular": 9, "semiregular": 9}


def test_budget_below_space_is_capacity():
    r = run("LEM_71L", "EXHAUSTIVE", budget=100, n=4, q=0)
    assert r.status == "capacity" and r.exit_code == 3 and r.graphs_checked == 100


def test_grid_margins_frozen():
    r = inequality_audit("COR_31C", {"k": 1, "s": 0, "n": "8..20"})
    assert r.status == "pass"
    assert r.min_margin() == pytest.approx(0.0179002211464, abs=1e-9)
    r = inequality_audit("PROP_31P", {"k": 1, "s": 0, "n": "8..24"})
    assert r.min_margin() == pytest.approx(0.0399457432663, abs=1e-9)
    r = inequality_audit("LEM_63L", {"k": 2, "n": "18..24"})
    assert r.min_margin() == pytest.approx(0.0243282953175, abs=1e-9)
    with pytest.raises(ParameterError):
        inequality_audit("STAB_W01P")


def test_grid_outside_preconditions_is_skipped_by_default():
    on = inequality_audit("LEM_64L", {"k": [1, 2], "n": "18..24"})
    off = inequality_audit("LEM_64L", {"k": [1, 2], "n": "18..24", "enforce_preconditions": False})
    assert on.status == off.status == "pass"
    assert any(n.startswith("skipped") for n in on.notes)
    assert not any("outside_preconditions" in m for m in on.margins)
    assert sum("outside_preconditions" in m for m in off.margins) > 0
    assert off.min_margin() == pytest.approx(0.455035987156, abs=1e-9)


def test_sandwich_small_sample():
    r = sandwich_audit({"n": 7, "k": 1, "s": 0}, sample=300, seed=1)
    assert r.status == "pass" and r.graphs_checked == 300
    assert set(r.branches) <= {"closure_complete", "closure_is_F", "edges_above_39"}


def test_serial_and_parallel_agree():
    spec = TheoremSpec.of("STAB_W01P", n=5, property="ham", q=0)
    a = audit(spec, Mode.EXHAUSTIVE, jobs=1).as_dict(with_elapsed=False)
    b = audit(spec, Mode.EXHAUSTIVE, jobs=2).as_dict(with_elapsed=False)
    assert a == b


def test_sampled_audit_is_reproducible():
    spec = TheoremSpec.of("LEM_51L", max_n=8)
    a = audit(spec, Mode.SAMPLED, budget=40, seed=3).as_dict(with_elapsed=False)
    b = audit(spec, Mode.SAMPLED, budget=40, seed=3).as_dict(with_elapsed=False)
    assert a == b and a["status"] == "pass"


@pytest.mark.parametrize("id,mode,params", [
    ("PETERSEN_FACTS", "EXTREMAL", {}),
    ("STAB_W01P", "EXHAUSTIVE", {"n": 4, "property": "traceable", "q": 0}),
    ("COR_31C", "GRID", {"k": 1, "s": 0, "n": "8..10"}),
    ("T_12T", "EXTREMAL", {"n": 8, "k": 1, "s": 1}),
])
def test_reports_validate_against_schema(id, mode, params):
    jsonschema.validate(run(id, mode, **params).as_dict(), SCHEMA)


def test_k33_example_graph_matches_named():
    assert isomorphic(complete_bipartite(3, 3), relabel(complete_bipartite(3, 3), [5, 4, 3, 2, 1, 0]))
