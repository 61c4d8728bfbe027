import pytest

from hamext.errors import InputError, InvariantViolation
from hamext.families import fiber_vertices, gen_G, gen_G_inf, gen_H_inf
from hamext.graphcore import Cycle, FiniteGraph, LazyGraph, components
from hamext.oracle import minimal_separators, random_star_clawfree
from hamext.structure import (
    decompose,
    is_ray_blocking,
    minimal_ray_blocker,
    verify_complete_attachment,
    verify_two_components,
)


def four_cycle_on_home_fibers(G):
    a, b = fiber_vertices(G.descriptor, 0)[:2]
    c, d = fiber_vertices(G.descriptor, 1)[:2]
    return Cycle((a, c, b, d))


def test_blocker_on_width_two_family():
    G = gen_G_inf(2)
    C = four_cycle_on_home_fibers(G)
    S = minimal_ray_blocker(G, C)
    want = set(fiber_vertices(G.descriptor, -1)) | set(fiber_vertices(G.descriptor, 2))
    assert S == frozenset(want)
    assert is_ray_blocking(G, C.order, S)
    # inclusion-minimal: every vertex is load-bearing
    for s in S:
        assert not is_ray_blocking(G, C.order, S - {s})


def test_blocker_on_width_three_family():
    G = gen_G_inf(3)
    desc = G.descriptor
    order = []
    for v0, v1 in zip(fiber_vertices(desc, 0), fiber_vertices(desc, 1)):
        order += [v0, v1]
    C = Cycle(tuple(order))
    S = minimal_ray_blocker(G, C)
    want = set(fiber_vertices(desc, -1)) | set(fiber_vertices(desc, 2))
    assert S == frozenset(want)
    assert len(S) == 6


def test_blocker_rejects_finite_graph():
    finite = FiniteGraph.from_edges(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    G = LazyGraph(
        finite.neighbors, lambda blocked, v: False, root=0
    )
    with pytest.raises(InputError, match="not infinite"):
        minimal_ray_blocker(G, Cycle((0, 1, 2, 3)))


def test_blocker_rejects_broken_cycle():
    G = gen_G_inf(2)
    with pytest.raises(InputError):
        minimal_ray_blocker(G, Cycle((0, 1, 8)))


def test_decompose_width_two():
    G = gen_G_inf(2)
    desc = G.descriptor
    C = four_cycle_on_home_fibers(G)
    S = minimal_ray_blocker(G, C)
    D = decompose(G, C.order, S)
    assert D.k == 2
    assert D.finite_component == frozenset(C.order)
    assert D.parts[0] == frozenset(fiber_vertices(desc, -1))
    assert D.parts[1] == frozenset(fiber_vertices(desc, 2))
    assert D.script_S == S
    assert D.part_of(min(D.parts[1])) == 1
    left, right = D.infinite_components
    assert fiber_vertices(desc, -2)[0] in left
    assert fiber_vertices(desc, 3)[0] in right
    assert fiber_vertices(desc, 3)[0] not in left
    assert min(S) not in left


def test_decompose_component_handles_enumerate():
    G = gen_G_inf(2)
    C = four_cycle_on_home_fibers(G)
    D = decompose(G, C.order, minimal_ray_blocker(G, C))
    left = D.infinite_components[0]
    assert left.members_within(0) == frozenset({left.representative})
    # three hops from the representative of the negative-side component
    # reach exactly fibers -5..-2
    want = {v for f in (-5, -4, -3, -2) for v in fiber_vertices(G.descriptor, f)}
    assert left.members_within(3) == frozenset(want)


def test_decompose_rejects_one_sided_blocker():
    G = gen_G_inf(2)
    C = four_cycle_on_home_fibers(G)
    one_side = frozenset(fiber_vertices(G.descriptor, 2))
    with pytest.raises(InputError, match="not ray-blocking"):
        decompose(G, C.order, one_side)


def test_decompose_rejects_bloated_blocker():
    G = gen_G_inf(2)
    C = four_cycle_on_home_fibers(G)
    S = minimal_ray_blocker(G, C)
    fat = S | {fiber_vertices(G.descriptor, 3)[0]}
    with pytest.raises(InputError, match="not inclusion-minimal"):
        decompose(G, C.order, fat)


def test_decompose_rejects_overlap_and_empty():
    G = gen_G_inf(2)
    C = four_cycle_on_home_fibers(G)
    S = minimal_ray_blocker(G, C)
    with pytest.raises(InputError):
        decompose(G, C.order, S | {C.order[0]})
    with pytest.raises(InputError):
        decompose(G, (), S)


def test_decompose_stress_family_with_claws():
    # the alternating family is not claw-free; decompose still splits it
    # cleanly once the claw-free gate is switched off
    G = gen_H_inf(6)
    desc = G.descriptor
    X = tuple(fiber_vertices(desc, 0)) + tuple(fiber_vertices(desc, 1))
    S = set(fiber_vertices(desc, -1)) | set(fiber_vertices(desc, 2))
    with pytest.raises(InputError, match="claw"):
        decompose(G, X, S)
    D = decompose(G, X, S, check_claw_free=False)
    assert D.k == 2
    assert D.finite_component == frozenset(X)
    assert {frozenset(fiber_vertices(desc, -1)), frozenset(fiber_vertices(desc, 2))} == set(D.parts)


def test_two_components_on_path():
    P3 = FiniteGraph.from_edges(range(3), [(0, 1), (1, 2)])
    v = verify_two_components(P3, {1})
    assert v.ok and v.component_count == 2
    assert v.components == (frozenset({0}), frozenset({2}))


def test_two_components_on_ring_of_cliques():
    G = gen_G(6, 2)
    seps = minimal_separators(G, max_size=4)
    assert seps  # fiber pairs do separate the ring
    for S in seps:
        v = verify_two_components(G, S)
        assert v.ok, f"separator {sorted(S)} gave {v.component_count} components"


def test_two_components_rejects_claw():
    star = FiniteGraph.from_edges(range(4), [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(InputError, match="claw"):
        verify_two_components(star, {0})


def test_two_components_rejects_non_minimal():
    P5 = FiniteGraph.from_edges(range(5), [(i, i + 1) for i in range(4)])
    with pytest.raises(InputError, match="not inclusion-minimal"):
        verify_two_components(P5, {1, 3})
    with pytest.raises(InputError, match="does not separate"):
        verify_two_components(P5, {0})


def test_complete_attachment_on_path():
    P3 = FiniteGraph.from_edges(range(3), [(0, 1), (1, 2)])
    assert verify_complete_attachment(P3, {1}).ok


def test_complete_attachment_on_ring_of_cliques():
    G = gen_G(6, 2)
    for S in minimal_separators(G, max_size=4):
        assert verify_complete_attachment(G, S).ok


def test_separator_regressions_on_corpus():
    """Verified statements stay verified on sampled claw-free graphs."""
    checked = 0
    for seed in range(120):
        G = random_star_clawfree(seed)
        if len(G.vertices) > 12:
            continue
        for S in minimal_separators(G, max_size=5):
            assert verify_two_components(G, S).ok
            assert verify_complete_attachment(G, S).ok
            checked += 1
    assert checked > 50


def test_is_ray_blocking_empty_never_blocks():
    G = gen_G_inf(2)
    assert not is_ray_blocking(G, (0,), ())
