"""Cycle extension operators and the finite Hamilton-cycle constructor.

A cycle C absorbs an outside vertex v (the target) through one of three
rewirings, each anchored at cycle vertices adjacent to v:

  kind I    replace the edge u u+ by the path u v u+
  kind II   replace the edge u u+ by the path u v x u+, pulling in a
            second outside vertex x
  kind III  delete the edges u u+ and y y+, add u v, v y and u+ y+,
            which reverses the arc between u+ and y

Under the degree condition at least one of the three always applies, so
the finder does a plain exhaustive witness search in a fixed order and
treats exhaustion as an invariant violation rather than a result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import check_star
from .errors import InputError, InvariantViolation
from .graphcore import Cycle, FiniteGraph, LazyGraph, verify_cycle

Graph = FiniteGraph | LazyGraph

KINDS = ("I", "II", "III")


@dataclass(frozen=True)
class Extension:
    """One rewiring step: which kind, the absorbed target, and witnesses.

    u is always the anchor whose outgoing cycle edge is removed; x is
    the second absorbed vertex (kind II only); y is the second anchor
    (kind III only).
    """

    kind: str
    target: int
    u: int
    x: int | None = None
    y: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"unknown extension kind {self.kind!r}")
        if self.kind == "II" and self.x is None:
            raise InputError("kind II needs the intermediate vertex x")
        if self.kind == "III" and self.y is None:
            raise InputError("kind III needs the second anchor y")

    def new_vertices(self) -> tuple[int, ...]:
        if self.kind == "II":
            return (self.target, self.x)
        return (self.target,)

    def to_json_obj(self) -> dict:
        obj = {"kind": self.kind, "target": self.target, "u": self.u}
        if self.x is not None:
            obj["x"] = self.x
        if self.y is not None:
            obj["y"] = self.y
        return obj


def find_extension(G: Graph, C: Cycle, v: int) -> Extension:
    """Find the first applicable extension absorbing v, in kind order
    I, III, II with witnesses tried in ascending id order.

    The degree condition guarantees success for any v with a neighbour
    on C; running out of candidates therefore signals a precondition
    failure or a bug and raises InvariantViolation.
    """
    if v in C:
        raise InputError(f"target {v} already lies on the cycle")
    anchors = sorted(w for w in G.neighbors(v) if w in C)
    if not anchors:
        raise InputError(f"target {v} has no neighbour on the cycle")

    for u in anchors:
        if G.adjacent(v, C.succ(u)):
            return Extension("I", v, u)
    for u in anchors:
        up = C.succ(u)
        for y in anchors:
            if y == u or y == up or C.succ(y) == u:
                continue
            if G.adjacent(up, C.succ(y)):
                return Extension("III", v, u, y=y)
    for u in anchors:
        up = C.succ(u)
        for x in sorted(G.neighbors(v)):
            if x in C or x == v:
                continue
            if G.adjacent(x, up):
                return Extension("II", v, u, x=x)
    raise InvariantViolation(
        f"no extension absorbs target {v}; the degree condition cannot hold here",
        cycle=C.order,
        target=v,
        anchors=tuple(anchors),
        neighborhood=tuple(G.neighbors(v)),
    )


def apply_extension(C: Cycle, e: Extension) -> Cycle:
    """Rewire C according to e.  Validation here is purely structural
    (membership and distinctness); adjacency of the new edges is the
    finder's business and can be re-checked with verify_cycle.
    """
    v = e.target
    if v in C:
        raise InputError(f"target {v} already lies on the cycle")
    if e.u not in C:
        raise InputError(f"anchor {e.u} does not lie on the cycle")
    order = C.order
    pos_u = order.index(e.u)

    if e.kind == "I":
        return Cycle(order[: pos_u + 1] + (v,) + order[pos_u + 1 :])

    if e.kind == "II":
        if e.x in C or e.x == v:
            raise InputError(f"kind II intermediate {e.x} is not an outside vertex")
        return Cycle(order[: pos_u + 1] + (v, e.x) + order[pos_u + 1 :])

    y = e.y
    if y not in C:
        raise InputError(f"second anchor {y} does not lie on the cycle")
    up = C.succ(e.u)
    if y == e.u or y == up or C.succ(y) == e.u:
        raise InputError("kind III anchors overlap degenerately")
    # walk u+ .. y forwards, then emit v, reversed arc, y+ .. u
    arc = []
    w = up
    while True:
        arc.append(w)
        if w == y:
            break
        w = C.succ(w)
    rest = []
    w = C.succ(y)
    while True:
        rest.append(w)
        if w == e.u:
            break
        w = C.succ(w)
    return Cycle((v, *reversed(arc), *rest))


def extension_sequence(
    G: FiniteGraph,
    C0: Cycle,
    target_filter=None,
) -> list[Cycle]:
    """Grow C0 one extension at a time until no admissible target is left.

    A target is admissible when it is off the cycle, has a neighbour on
    the cycle, and passes target_filter (None admits everything).  The
    smallest admissible id is absorbed first.  Returns the full list of
    cycles, starting with C0.
    """
    seq = [C0]
    C = C0
    while True:
        on = C.vertex_set
        candidates = sorted(
            v
            for u in C.order
            for v in G.neighbors(u)
            if v not in on and (target_filter is None or target_filter(v))
        )
        if not candidates:
            return seq
        C = apply_extension(C, find_extension(G, C, candidates[0]))
        seq.append(C)


def find_initial_cycle(G: FiniteGraph) -> Cycle:
    """Smallest-id triangle, else smallest-id 4-cycle.

    Any connected graph with at least three vertices satisfying the
    degree condition contains one of the two: an induced path u v w
    yields two common neighbours of u and w, and one of them closes a
    4-cycle; with no induced path at all the graph is complete.
    """
    for v in G.vertices:
        nbrs = G.adj[v]
        for i, a in enumerate(nbrs):
            if a < v:
                continue
            for b in nbrs[i + 1 :]:
                if G.adjacent(a, b):
                    return Cycle((v, a, b))
    for v in G.vertices:
        nbrs = G.adj[v]
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                for z in G.adj[a]:
                    if z > v and z != b and G.adjacent(z, b):
                        return Cycle((v, a, z, b))
    raise InputError("graph contains no triangle and no 4-cycle")


def extend_to_hamilton(G: FiniteGraph, seed: Cycle | None = None) -> Cycle:
    """Hamilton cycle of a connected graph meeting the degree condition.

    Starts from seed (or a smallest triangle / 4-cycle) and exhausts the
    unrestricted extension sequence.  The result is re-validated before
    it is returned.
    """
    if len(G.vertices) < 3:
        raise InputError("need at least three vertices")
    if not G.is_connected():
        raise InputError("graph is not connected")
    star = check_star(G)
    if not star.holds:
        raise InputError(
            f"degree condition fails at induced path {star.witness}: "
            f"{star.lhs} < {star.rhs}"
        )
    if seed is not None:
        report = verify_cycle(G, seed)
        if not report.ok:
            raise InputError(f"seed cycle invalid: {report.reason}")
    C = extension_sequence(G, seed or find_initial_cycle(G))[-1]
    report = verify_cycle(G, C)
    if not report.is_hamiltonian:
        raise InvariantViolation(
            "extension sequence stalled before spanning",
            cycle=C.order,
            missing=tuple(sorted(G.vertex_set - C.vertex_set)),
        )
    return C
