import pytest

from hamext.errors import FrontierContamination, InputError
from hamext.families import gen_G, gen_G_inf, gen_H, gen_H_inf
from hamext.graphcore import FiniteGraph, ball
from hamext.conditions import (
    check_star,
    check_star_ball,
    check_ungl_kette,
    claw_free_on_ball,
    induced_paths_3,
    is_claw_free,
)


def star_k13():
    return FiniteGraph.from_edges(range(4), [(0, 1), (0, 2), (0, 3)])


def bull():
    # triangle with two horns; claw-free but fails the degree condition
    return FiniteGraph.from_edges(range(5), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])


def test_induced_paths_on_path_graph():
    P4 = FiniteGraph.from_edges(range(4), [(0, 1), (1, 2), (2, 3)])
    assert induced_paths_3(P4) == [(0, 1, 2), (1, 2, 3)]


def test_induced_paths_on_complete_graph():
    K4 = FiniteGraph.from_edges(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert induced_paths_3(K4) == []


def test_star_fails_on_k13():
    v = check_star(star_k13())
    assert not v.holds
    assert v.witness == (1, 0, 2)
    assert (v.lhs, v.rhs) == (2, 4)
    obj = v.to_json_obj()
    assert obj["witness"] == [1, 0, 2]
    assert obj["degree_sum"] == 2 and obj["union_size"] == 4


def test_star_fails_on_bull():
    v = check_star(bull())
    assert not v.holds and v.witness == (0, 1, 3)


def test_star_holds_on_ring_of_cliques():
    for q in range(3, 9):
        for n in range(2, 5):
            assert check_star(gen_G(q, n)).holds


def test_star_identity_at_q5():
    # at ring length 5 both sides of the inequality are tight multiples of n
    for n in (2, 3, 4):
        G = gen_G(5, n)
        for u, v, w in induced_paths_3(G):
            assert G.degree(u) + G.degree(w) == 6 * n - 2
            nu = set(G.neighbors(u)) | set(G.neighbors(v)) | set(G.neighbors(w))
            assert len(nu) == 5 * n


def test_star_boundary_for_alternating_family():
    for q in (2, 3):
        for n in (6, 7):
            assert check_star(gen_H(q, n)).holds
    v = check_star(gen_H(3, 5))
    assert not v.holds
    assert v.witness == (1, 4, 10)
    assert (v.lhs, v.rhs) == (22, 23)


def test_claw_detection():
    v = is_claw_free(star_k13())
    assert not v.claw_free
    assert v.witness == (0, (1, 2, 3))
    assert is_claw_free(bull()).claw_free
    assert is_claw_free(gen_G(5, 3)).claw_free
    # alternating family always has a claw at a star-fiber center
    w = is_claw_free(gen_H(2, 6))
    assert not w.claw_free
    center, leaves = w.witness
    assert center == 0 and leaves == (1, 2, 3)


def test_claw_verdict_json():
    obj = is_claw_free(star_k13()).to_json_obj()
    assert obj == {"claw_free": False, "witness": {"center": 0, "leaves": [1, 2, 3]}}


def test_ring_of_cliques_clawfree_sweep():
    for q in range(3, 9):
        for n in range(2, 5):
            assert is_claw_free(gen_G(q, n)).claw_free


def test_star_ball_on_infinite_families():
    G = gen_G_inf(2)
    assert check_star_ball(G, G.root, 5).holds
    H6 = gen_H_inf(6)
    assert check_star_ball(H6, H6.root, 5).holds
    H3 = gen_H_inf(3)
    v = check_star_ball(H3, H3.root, 5)
    assert not v.holds and v.scope == "ball"
    with pytest.raises(InputError):
        check_star_ball(G, G.root, 2)


def test_claw_free_on_ball_rejects_frontier_center():
    G = gen_G_inf(2)
    B = ball(G, G.root, 2)
    frontier_vertex = min(B.frontier)
    with pytest.raises(FrontierContamination):
        claw_free_on_ball(B, [frontier_vertex])
    interior = sorted(B.vertex_set - B.frontier)
    assert claw_free_on_ball(B, interior).claw_free


def test_chain_condition_on_ring_of_cliques():
    for q, n in [(5, 2), (5, 3), (6, 4)]:
        v = check_ungl_kette(gen_G(q, n))
        assert v.holds


def test_chain_condition_requires_star():
    with pytest.raises(InputError):
        check_ungl_kette(bull())


def test_chain_condition_counts():
    # on the q=5, n=2 ring: for any induced path u v w the middle vertex
    # contributes exactly n private neighbours and u, w share at least n
    G = gen_G(5, 2)
    for u, v, w in induced_paths_3(G):
        nu, nv, nw = (set(G.neighbors(x)) for x in (u, v, w))
        private = nv - nu - nw
        common = nu & nw
        assert len(common) >= len(private) >= 2
