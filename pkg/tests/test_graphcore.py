import json

import pytest
from hypothesis import given, strategies as st

from hamext.errors import FrontierContamination, InputError, InvariantViolation
from hamext.families import gen_G_inf
from hamext.graphcore import (
    Cycle,
    FiniteGraph,
    ball,
    canonical_edge,
    components,
    cut_edges,
    cycle_from_json_obj,
    cycle_to_json_obj,
    distances_from,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    neighborhood_k,
    verify_cycle,
)


def k4():
    return FiniteGraph.from_edges(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])


def path(n):
    return FiniteGraph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def test_from_edges_basic():
    G = FiniteGraph.from_edges([2, 0, 1], [(0, 1), (2, 1)])
    assert G.vertices == (0, 1, 2)
    assert G.neighbors(1) == (0, 2)
    assert G.degree(1) == 2
    assert G.adjacent(0, 1) and not G.adjacent(0, 2)
    assert G.edges() == [(0, 1), (1, 2)]


def test_from_edges_rejects_bad_input():
    with pytest.raises(InputError):
        FiniteGraph.from_edges([0, 1], [(0, 0)])
    with pytest.raises(InputError):
        FiniteGraph.from_edges([0, 1], [(0, 5)])
    with pytest.raises(InputError):
        FiniteGraph.from_edges([0, 0, 1], [])
    with pytest.raises(InputError):
        k4().neighbors(99)


def test_induced_subgraph():
    G = k4().induced([0, 1, 2])
    assert G.vertices == (0, 1, 2)
    assert G.edge_count() == 3
    assert G.is_connected()


def test_cycle_navigation():
    C = Cycle((3, 1, 4, 5))
    assert C.succ(3) == 1 and C.succ(5) == 3
    assert C.pred(3) == 5 and C.pred(1) == 3
    assert len(C) == 4
    assert 4 in C and 7 not in C
    assert C.edge_set == {(1, 3), (1, 4), (4, 5), (3, 5)}
    with pytest.raises(InputError):
        C.succ(7)


def test_cycle_rejects_degenerate():
    with pytest.raises(InputError):
        Cycle((1, 2))
    with pytest.raises(InputError):
        Cycle((1, 2, 1))


def test_verify_cycle():
    G = k4()
    ok = verify_cycle(G, Cycle((0, 1, 2, 3)))
    assert ok.ok and ok.is_hamiltonian
    partial = verify_cycle(G, Cycle((0, 1, 2)))
    assert partial.ok and not partial.is_hamiltonian
    bad = verify_cycle(path(4), Cycle((0, 1, 3)))
    assert not bad.ok
    assert "1" in bad.reason and "3" in bad.reason


def test_components_ordering():
    G = FiniteGraph.from_edges(range(6), [(0, 1), (2, 3), (4, 5), (1, 2)])
    assert components(G) == [frozenset({0, 1, 2, 3}), frozenset({4, 5})]
    assert components(G, removed=[1]) == [
        frozenset({0}),
        frozenset({2, 3}),
        frozenset({4, 5}),
    ]
    with pytest.raises(InputError):
        components(G, removed=[77])


def test_distances_and_neighborhood():
    G = path(6)
    d = distances_from(G, {0})
    assert d == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5}
    assert neighborhood_k(G, {2}, 1) == frozenset({1, 3})
    assert neighborhood_k(G, {2}, 2) == frozenset({0, 1, 3, 4})


def test_cut_edges():
    G = k4()
    cut = cut_edges(G, {0, 1})
    assert cut.edges == frozenset({(0, 2), (0, 3), (1, 2), (1, 3)})


# Ball of radius 2 around the root of the width-2 double-ray family:
# fibers -2..2, ten vertices, frontier = the two outermost fibers.
def test_ball_on_infinite_family():
    G = gen_G_inf(2)
    B = ball(G, G.root, 2)
    assert B.vertices == (0, 1, 2, 3, 4, 5, 6, 7, 8, 9)
    assert B.frontier == frozenset({6, 7, 8, 9})
    assert B.degree(0) == 5
    # frontier vertices have truncated neighbourhoods inside the ball
    assert B.degree(8) == 3


def test_ball_accepts_multiple_sources():
    G = gen_G_inf(2)
    B = ball(G, {0, 4}, 1)
    assert 0 in B.vertex_set and 4 in B.vertex_set
    assert B.frontier


def test_ball_radius_cap(monkeypatch):
    G = gen_G_inf(2)
    monkeypatch.setenv("HAMEXT_BALL_RADIUS_MAX", "3")
    with pytest.raises(InputError):
        ball(G, G.root, 4)
    monkeypatch.setenv("HAMEXT_BALL_RADIUS_MAX", "nope")
    with pytest.raises(InputError):
        ball(G, G.root, 1)


def test_ball_detects_asymmetric_oracle():
    from hamext.graphcore import LazyGraph

    def nbrs(v):
        if v == 0:
            return (1,)
        if v == 1:
            return (2,)  # missing the back-edge to 0
        return (1,)

    G = LazyGraph(nbrs, lambda blocked, v: True, root=0)
    with pytest.raises(InvariantViolation):
        ball(G, 0, 2)


def test_escape_requires_unblocked_vertex():
    G = gen_G_inf(2)
    with pytest.raises(InputError):
        G.escapes(frozenset({0, 1}), 0)


def test_graph_json_round_trip():
    G = FiniteGraph.from_edges([0, 1, 2], [(0, 1), (1, 2)], labels={0: "a"})
    text = graph_to_json(G)
    H = graph_from_json(text)
    assert H.vertices == G.vertices
    assert H.edges() == G.edges()
    assert H.labels == {0: "a"}
    # serialization is canonical: a second pass is byte-identical
    assert graph_to_json(H) == text


def test_graph_json_rejects_malformed():
    with pytest.raises(InputError):
        graph_from_json("[]")
    with pytest.raises(InputError):
        graph_from_json(json.dumps({"vertices": [0], "edges": [[0, 0]]}))
    with pytest.raises(InputError):
        graph_from_json(json.dumps({"vertices": [0, 1], "edges": [], "junk": 1}))


def test_cycle_json_round_trip():
    C = Cycle((2, 0, 1))
    assert cycle_from_json_obj(cycle_to_json_obj(C)).order == (2, 0, 1)
    with pytest.raises(InputError):
        cycle_from_json_obj({"cycle": [1, 2]})


def test_dot_output_mentions_all_edges():
    G = path(3)
    dot = graph_to_dot(G, highlight=[(0, 1)])
    assert "0 -- 1" in dot and "1 -- 2" in dot
    assert dot.count("penwidth") == 1


@given(st.integers(), st.integers())
def test_canonical_edge_sorts(a, b):
    lo, hi = canonical_edge(a, b)
    assert (lo, hi) == (min(a, b), max(a, b))


@st.composite
def random_graph(draw):
    n = draw(st.integers(min_value=1, max_value=9))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return FiniteGraph.from_edges(range(n), chosen)


@given(random_graph())
def test_json_round_trip_any_graph(G):
    H = graph_from_json(graph_to_json(G))
    assert H.vertices == G.vertices and H.edges() == G.edges()


@given(random_graph())
def test_components_partition_vertices(G):
    comps = components(G)
    seen = [v for c in comps for v in c]
    assert sorted(seen) == list(G.vertices)
