"""Example-family generators, finite and infinite.

The finite families are lexicographic products of a cycle with a
complete graph, and an alternating construction that glues four-vertex
star fibers (class A) to complete fibers (class B) around an even
cycle.  The infinite variants replace the cycle by a double ray.

Vertex ids follow documented bijections from (fiber, inner) coordinates:

* finite products: ``id = fiber * n + inner``;
* the alternating family: fibers are laid out consecutively, class A
  fibers contributing 4 ids and class B fibers ``n`` ids;
* double-ray families: the fiber index is folded to a non-negative
  integer by the zigzag map ``f >= 0 -> 2f``, ``f < 0 -> -2f - 1`` and
  the id is ``zigzag(f) * width + inner`` with a fixed per-family width.

Class A fibers sit on even fiber indices, and inner index 0 is the star
center.  Escape oracles for the double-ray families are exact: they do
a finite search bounded by the fiber span of the blocked set.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping

from .errors import InputError
from .graphcore import FiniteGraph, LazyGraph

# ---------------------------------------------------------------------------
# small building blocks


def complete_graph(n: int) -> FiniteGraph:
    if n < 1:
        raise InputError("complete graph needs at least one vertex")
    return FiniteGraph.from_edges(
        range(n), [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def cycle_graph(q: int) -> FiniteGraph:
    if q < 3:
        raise InputError("cycle graph needs at least three vertices")
    return FiniteGraph.from_edges(range(q), [(i, (i + 1) % q) for i in range(q)])


def star_k13() -> FiniteGraph:
    """The claw: center 0, leaves 1..3."""
    return FiniteGraph.from_edges(range(4), [(0, 1), (0, 2), (0, 3)])


# ---------------------------------------------------------------------------
# lexicographic product


def lexicographic_product(G: FiniteGraph, H: FiniteGraph) -> FiniteGraph:
    """Graph on V(G) x V(H); (u1,h1)(u2,h2) is an edge iff u1u2 is an
    edge of G, or u1 = u2 and h1h2 is an edge of H.

    Ids are ``index(u) * |V(H)| + index(h)`` over the sorted vertex
    orders, labelled ``"u:h"`` with the original ids.
    """
    if not G.vertices or not H.vertices:
        raise InputError("lexicographic product needs non-empty factors")
    nh = len(H.vertices)
    gidx = {u: i for i, u in enumerate(G.vertices)}
    hidx = {h: i for i, h in enumerate(H.vertices)}
    ids = {}
    labels = {}
    for u in G.vertices:
        for h in H.vertices:
            vid = gidx[u] * nh + hidx[h]
            ids[(u, h)] = vid
            labels[vid] = f"{u}:{h}"
    edges = []
    for u1, u2 in G.edges():
        for h1 in H.vertices:
            for h2 in H.vertices:
                edges.append((ids[(u1, h1)], ids[(u2, h2)]))
    for u in G.vertices:
        for h1, h2 in H.edges():
            edges.append((ids[(u, h1)], ids[(u, h2)]))
    return FiniteGraph.from_edges(ids.values(), edges, labels=labels)


# ---------------------------------------------------------------------------
# finite families


def gen_G(q: int, n: int) -> FiniteGraph:
    """Ring-of-cliques family: cycle of length q, complete fibers of
    size n, consecutive fibers completely joined.  Every vertex has
    degree 3n - 1.  Vertex id = fiber * n + inner.
    """
    if q < 3:
        raise InputError("gen_G requires q >= 3")
    if n < 2:
        raise InputError("gen_G requires n >= 2")
    return lexicographic_product(cycle_graph(q), complete_graph(n))


def _h_fiber_size(f: int, n: int) -> int:
    return 4 if f % 2 == 0 else n


def gen_H(q: int, n: int) -> FiniteGraph:
    """Alternating star/clique family over a cycle of length 2q.

    Even fibers are class A (a 4-vertex star: inner 0 the center, 1..3
    the leaves), odd fibers are class B (complete on n vertices), and
    consecutive fibers are completely joined.
    """
    if q < 2:
        raise InputError("gen_H requires q >= 2")
    if n < 2:
        raise InputError("gen_H requires n >= 2")
    fibers = 2 * q
    offsets = []
    total = 0
    for f in range(fibers):
        offsets.append(total)
        total += _h_fiber_size(f, n)

    def vid(f: int, i: int) -> int:
        return offsets[f] + i

    labels = {}
    edges = []
    for f in range(fibers):
        size = _h_fiber_size(f, n)
        for i in range(size):
            labels[vid(f, i)] = f"{f}:{i}"
        if f % 2 == 0:
            edges.extend((vid(f, 0), vid(f, leaf)) for leaf in (1, 2, 3))
        else:
            edges.extend(
                (vid(f, i), vid(f, j)) for i in range(size) for j in range(i + 1, size)
            )
        g = (f + 1) % fibers
        for i in range(size):
            for j in range(_h_fiber_size(g, n)):
                edges.append((vid(f, i), vid(g, j)))
    return FiniteGraph.from_edges(range(total), edges, labels=labels)


# ---------------------------------------------------------------------------
# double-ray (infinite) families


def zigzag(f: int) -> int:
    return 2 * f if f >= 0 else -2 * f - 1


def unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def _make_double_ray_family(
    fiber_size: Callable[[int], int],
    fiber_edges: Callable[[int], list[tuple[int, int]]],
    width: int,
    descriptor: Mapping[str, object],
) -> LazyGraph:
    """Shared machinery: fibers indexed by all integers, consecutive
    fibers completely joined, inner structure per fiber."""

    def encode(f: int, i: int) -> int:
        return zigzag(f) * width + i

    def decode(v: int) -> tuple[int, int]:
        if v < 0:
            raise InputError(f"invalid vertex id {v}")
        f = unzigzag(v // width)
        i = v % width
        if i >= fiber_size(f):
            raise InputError(f"invalid vertex id {v} (inner index out of range)")
        return f, i

    def neighbors(v: int) -> tuple[int, ...]:
        f, i = decode(v)
        out = []
        for a, b in fiber_edges(f):
            if a == i:
                out.append(encode(f, b))
            elif b == i:
                out.append(encode(f, a))
        for g in (f - 1, f + 1):
            out.extend(encode(g, j) for j in range(fiber_size(g)))
        return tuple(sorted(out))

    def escapes(blocked: frozenset[int], v: int) -> bool:
        decode(v)
        if not blocked:
            return True
        span = [decode(b)[0] for b in blocked]
        lo, hi = min(span), max(span)
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            f, _ = decode(u)
            if f < lo or f > hi:
                return True
            for w in neighbors(u):
                if w not in blocked and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    return LazyGraph(
        neighbor_oracle=neighbors,
        escape_oracle=escapes,
        root=encode(0, 0),
        end_rays={
            "left": lambda t: encode(-t, 0),
            "right": lambda t: encode(t, 0),
        },
        descriptor=descriptor,
    )


def gen_G_inf(n: int) -> LazyGraph:
    """Double-ray-of-cliques family: complete fibers of size n over the
    integers.  Id bijection: ``zigzag(f) * n + i``."""
    if n < 2:
        raise InputError("gen_G_inf requires n >= 2")
    clique = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _make_double_ray_family(
        fiber_size=lambda f: n,
        fiber_edges=lambda f: clique,
        width=n,
        descriptor={"family": "GZn", "params": {"n": n}},
    )


def gen_H_inf(n: int) -> LazyGraph:
    """Alternating star/clique fibers over the integers; even fibers are
    class A stars.  Id bijection: ``zigzag(f) * max(4, n) + i``."""
    if n < 2:
        raise InputError("gen_H_inf requires n >= 2")
    star = [(0, 1), (0, 2), (0, 3)]
    clique = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _make_double_ray_family(
        fiber_size=lambda f: _h_fiber_size(f, n),
        fiber_edges=lambda f: star if f % 2 == 0 else clique,
        width=max(4, n),
        descriptor={"family": "HZn", "params": {"n": n}},
    )


# ---------------------------------------------------------------------------
# descriptors and coordinate helpers

_INFINITE_FAMILIES = {"GZn": gen_G_inf, "HZn": gen_H_inf}
_FINITE_FAMILIES = {"Gqn": gen_G, "H2qn": gen_H}


def descriptor_to_lazy(desc: Mapping[str, object]) -> LazyGraph:
    """Rebuild an infinite family from its descriptor JSON object."""
    if not isinstance(desc, Mapping):
        raise InputError("descriptor must be a JSON object")
    family = desc.get("family")
    params = desc.get("params")
    if family not in _INFINITE_FAMILIES:
        raise InputError(f"unknown infinite family {family!r}")
    if not isinstance(params, Mapping) or "n" not in params:
        raise InputError("descriptor params must contain n")
    n = params["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("descriptor parameter n must be an integer")
    return _INFINITE_FAMILIES[family](n)


def family_width(desc: Mapping[str, object]) -> int:
    family = desc["family"]
    n = desc["params"]["n"]  # type: ignore[index]
    if family == "GZn":
        return int(n)  # type: ignore[arg-type]
    if family == "HZn":
        return max(4, int(n))  # type: ignore[arg-type]
    raise InputError(f"unknown infinite family {family!r}")


def fiber_of(desc: Mapping[str, object], v: int) -> int:
    """Fiber index of a vertex id under a family descriptor."""
    width = family_width(desc)
    if v < 0:
        raise InputError(f"invalid vertex id {v}")
    return unzigzag(v // width)


def fiber_vertices(desc: Mapping[str, object], f: int) -> tuple[int, ...]:
    """All vertex ids of one fiber of an infinite family."""
    width = family_width(desc)
    family = desc["family"]
    n = int(desc["params"]["n"])  # type: ignore[index, arg-type]
    size = n if family == "GZn" else _h_fiber_size(f, n)
    return tuple(zigzag(f) * width + i for i in range(size))


def fiber_window(desc: Mapping[str, object], half_width: int) -> frozenset[int]:
    """Vertex ids of fibers -half_width .. half_width."""
    if half_width < 0:
        raise InputError("window half-width must be non-negative")
    out: set[int] = set()
    for f in range(-half_width, half_width + 1):
        out.update(fiber_vertices(desc, f))
    return frozenset(out)
