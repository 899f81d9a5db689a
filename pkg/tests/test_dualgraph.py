import json

import pytest
from hypothesis import given, strategies as st

from pbrigid.dualgraph import (Curve, GraphError, IntersectionGraph, auto_candidates, contract,
                               contract_all, del_pezzo_degree, singular_curve_notes)


def star(center, branches, k2):
    # center (-1)-curve meeting (-k)-curves once each
    curves = [Curve("Delta", center, -2 - center)]
    curves += [Curve(n, -k, k - 2) for n, k in branches]
    return IntersectionGraph.build(curves, [("Delta", n, 1) for n, _ in branches], k2)


G_30 = star(-1, [("E2", 2), ("E3", 3), ("E5", 5)], -2)
G_12 = star(-1, [("E2", 2), ("E3+", 3), ("E3-", 3)], 0)


def test_curve_validation():
    assert Curve("E", -1, -1).is_minus_one_curve
    assert Curve("C", 1, -1).p_a == 1
    with pytest.raises(GraphError):
        Curve("bad", -1, 0)
    with pytest.raises(GraphError):
        Curve("bad", -1, -3)


def test_graph_validation():
    a = Curve("a", -1, -1)
    with pytest.raises(GraphError):
        IntersectionGraph.build([a, a])
    with pytest.raises(GraphError):
        IntersectionGraph.build([a], [("a", "b", 1)])
    with pytest.raises(GraphError):
        IntersectionGraph.build([a, Curve("b", -2, 0)], [("a", "b", 0)])
    with pytest.raises(GraphError):
        IntersectionGraph.build([a], [("a", "a", 1)])


def test_contract_star_first_step():
    G, rec = contract(G_30, "Delta")
    assert {n: c.self_int for n, c in G.curves.items()} == {"E2": -1, "E3": -2, "E5": -4}
    assert all(G.mult(a, b) == 1 for a, b in [("E2", "E3"), ("E2", "E5"), ("E3", "E5")])
    assert G.ambient_k_squared == -1
    assert rec.neighbor_mults == {"E2": 1, "E3": 1, "E5": 1}
    assert rec.deltas["E5"] == (1, -1)


def test_contract_errors():
    with pytest.raises(GraphError):
        contract(G_30, "E5")
    with pytest.raises(GraphError):
        contract(G_30, "nope")
    cusp = IntersectionGraph.build([Curve("C", -1, 1)])
    with pytest.raises(GraphError):
        contract(cusp, "C")


def test_auto_driver_skips_competing_curves():
    final, trace = contract_all(G_12)
    assert [r.curve for r in trace] == ["Delta", "E2"]
    assert final.mult("E3+", "E3-") == 2 and del_pezzo_degree(final) == 2
    assert auto_candidates(final) == []


def test_explicit_order_and_notes():
    final, trace = contract_all(G_30, ["Delta", "E2", "E3"])
    assert final.names() == ["E5"] and final.curves["E5"].self_int == 1
    assert final.curves["E5"].p_a == 1 and final.ambient_k_squared == 1
    assert singular_curve_notes(final, G_30) == {"E5": "acquired one cusp or node"}
    assert [r.k_squared_after for r in trace] == [-1, 0, 1]


def test_empty_graph_unchanged():
    G = IntersectionGraph.build([], [], 5)
    final, trace = contract_all(G)
    assert final == G and trace == []


def test_json_round_trip_and_dot():
    text = json.dumps(G_30.to_json())
    assert IntersectionGraph.loads(text) == G_30
    dot = G_30.to_dot()
    assert dot.startswith('graph "G"') and '"Delta" -- "E5";' in dot
    for bad in ["[]", "{", '{"curves": [{"name": "x"}]}', '{"curves": 3}']:
        with pytest.raises(GraphError):
            IntersectionGraph.loads(bad)


@st.composite
def graphs(draw, disjoint=False):
    n = draw(st.integers(2 if disjoint else 1, 6))
    curves = []
    for k in range(n):
        s = draw(st.integers(-6, 3))
        g = draw(st.integers(0, 2))
        curves.append(Curve(f"C{k}", s, -2 - s + 2 * g))
    # make sure at least two rational (-1)-curves exist
    curves[0] = Curve("C0", -1, -1)
    if n > 1:
        curves[1] = Curve("C1", -1, -1)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            m = draw(st.integers(0, 3))
            if disjoint and (a, b) == (0, 1):
                m = 0
            if m:
                edges.append((f"C{a}", f"C{b}", m))
    return IntersectionGraph.build(curves, edges, draw(st.integers(-10, 9)))


@given(graphs())
def test_contraction_laws(G):
    H, rec = contract(G, "C0")
    assert H.ambient_k_squared == G.ambient_k_squared + 1
    for name, c in H.curves.items():
        m = G.mult(name, "C0")
        assert (c.self_int + c.k_degree) % 2 == 0
        assert c.self_int == G.curves[name].self_int + m * m
        assert c.p_a == G.curves[name].p_a + m * (m - 1) // 2
    assert IntersectionGraph.from_json(H.to_json()) == H


@given(graphs(disjoint=True))
def test_disjoint_contractions_commute(G):
    A, _ = contract(contract(G, "C0")[0], "C1")
    B, _ = contract(contract(G, "C1")[0], "C0")
    assert A == B
