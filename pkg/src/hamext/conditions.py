"""Decision procedures for the local degree condition and claw-freeness.

The central predicate: for every induced path u-v-w (uv and vw edges,
uw a non-edge), the degree sum d(u) + d(w) must be at least the size of
the combined neighbourhood N(u) | N(v) | N(w).  Verdicts carry the
witness triple and both compared numbers, so the example arithmetic of
the shipped families is directly assertable in tests.

For infinite graphs the check runs on a ball and only evaluates triples
whose neighbourhoods are provably complete; the verdict says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable

from .errors import FrontierContamination, InputError
from .graphcore import FiniteGraph, LazyGraph, ball, distances_from


@dataclass(frozen=True)
class StarVerdict:
    """Outcome of a condition check on induced paths.

    ``lhs``/``rhs`` are the two compared quantities at the witness
    (degree sum versus union size).  ``scope`` is "graph" for a full
    finite check and "ball" when only a finite window of an infinite
    graph was examined.
    """

    holds: bool
    witness: tuple[int, int, int] | None = None
    lhs: int | None = None
    rhs: int | None = None
    scope: str = "graph"

    def to_json_obj(self) -> dict:
        obj: dict = {"holds": self.holds, "scope": self.scope}
        if self.witness is not None:
            obj["witness"] = list(self.witness)
            obj["degree_sum"] = self.lhs
            obj["union_size"] = self.rhs
        return obj


@dataclass(frozen=True)
class ClawVerdict:
    claw_free: bool
    witness: tuple[int, tuple[int, int, int]] | None = None

    def to_json_obj(self) -> dict:
        obj: dict = {"claw_free": self.claw_free}
        if self.witness is not None:
            center, leaves = self.witness
            obj["witness"] = {"center": center, "leaves": list(leaves)}
        return obj


@dataclass(frozen=True)
class ChainVerdict:
    """Two-sided inequality on induced paths: common-neighbour count of
    the endpoints >= private-neighbour count of the middle >= 2."""

    holds: bool
    witness: tuple[int, int, int] | None = None
    common: int | None = None
    private: int | None = None

    def to_json_obj(self) -> dict:
        obj: dict = {"holds": self.holds}
        if self.witness is not None:
            obj["witness"] = list(self.witness)
            obj["common_endpoint_neighbors"] = self.common
            obj["private_middle_neighbors"] = self.private
        return obj


def induced_paths_3(G: FiniteGraph) -> list[tuple[int, int, int]]:
    """All induced paths on three vertices, one triple per unordered
    pair of endpoints, as (u, v, w) with u < w and v the middle."""
    out = []
    for v in G.vertices:
        nbrs = G.adj[v]
        for a_pos, u in enumerate(nbrs):
            for w in nbrs[a_pos + 1 :]:
                if not G.adjacent(u, w):
                    out.append((u, v, w))
    return out


def _star_at(G: FiniteGraph, u: int, v: int, w: int) -> tuple[int, int]:
    lhs = G.degree(u) + G.degree(w)
    union = set(G.adj[u]) | set(G.adj[v]) | set(G.adj[w])
    return lhs, len(union)


def check_star(G: FiniteGraph) -> StarVerdict:
    """Check the degree condition on every induced path of a finite graph."""
    for u, v, w in induced_paths_3(G):
        lhs, rhs = _star_at(G, u, v, w)
        if lhs < rhs:
            return StarVerdict(False, witness=(u, v, w), lhs=lhs, rhs=rhs)
    return StarVerdict(True)


def check_star_ball(
    G: LazyGraph, center: int | Iterable[int], radius: int
) -> StarVerdict:
    """Evaluate the degree condition on a ball of an infinite graph.

    Only induced paths whose three vertices lie at distance <= radius-2
    from the center are evaluated; for those every needed neighbourhood
    is complete inside the ball.  The verdict's scope is "ball".
    """
    if radius < 3:
        raise InputError("check_star_ball needs radius >= 3")
    if isinstance(center, int):
        center = (center,)
    B = ball(G, center, radius)
    dist = distances_from(B, set(center))
    eligible = {v for v in B.vertices if dist[v] <= radius - 2}
    for v in sorted(eligible):
        nbrs = B.adj[v]
        for a_pos, u in enumerate(nbrs):
            if u not in eligible:
                continue
            for w in nbrs[a_pos + 1 :]:
                if w not in eligible or B.adjacent(u, w):
                    continue
                if {u, v, w} & B.frontier:
                    raise FrontierContamination(
                        f"triple ({u}, {v}, {w}) touches the frontier"
                    )
                lhs, rhs = _star_at(B, u, v, w)
                if lhs < rhs:
                    return StarVerdict(
                        False, witness=(u, v, w), lhs=lhs, rhs=rhs, scope="ball"
                    )
    return StarVerdict(True, scope="ball")


def _claw_at(G: FiniteGraph, v: int) -> tuple[int, int, int] | None:
    nbrs = G.adj[v]
    deg = len(nbrs)
    for i in range(deg):
        for j in range(i + 1, deg):
            if G.adjacent(nbrs[i], nbrs[j]):
                continue
            for k in range(j + 1, deg):
                if not G.adjacent(nbrs[i], nbrs[k]) and not G.adjacent(
                    nbrs[j], nbrs[k]
                ):
                    return (nbrs[i], nbrs[j], nbrs[k])
    return None


def is_claw_free(G: FiniteGraph) -> ClawVerdict:
    """Scan for a vertex with three pairwise non-adjacent neighbours."""
    for v in G.vertices:
        leaves = _claw_at(G, v)
        if leaves is not None:
            return ClawVerdict(False, witness=(v, leaves))
    return ClawVerdict(True)


def claw_free_on_ball(B: FiniteGraph, centers: Iterable[int]) -> ClawVerdict:
    """Claw scan restricted to centers with complete neighbourhoods.

    ``centers`` must avoid the frontier and have all neighbours inside
    the ball; leaves may touch the frontier since only their mutual
    adjacency is read, and that is complete for ball members.
    """
    for v in sorted(set(centers)):
        if v in B.frontier:
            raise FrontierContamination(f"claw center {v} lies on the frontier")
        leaves = _claw_at(B, v)
        if leaves is not None:
            return ClawVerdict(False, witness=(v, leaves))
    return ClawVerdict(True)


def check_ungl_kette(G: FiniteGraph) -> ChainVerdict:
    """Verify the inequality chain implied by the degree condition.

    On every induced path u-v-w: the endpoints share at least as many
    neighbours as the middle vertex has private ones, and the middle
    vertex has at least two private neighbours (u and w themselves).
    Requires the degree condition to hold; a failing chain afterwards
    would contradict a proved statement, so callers treat it as a bug
    signal.
    """
    star = check_star(G)
    if not star.holds:
        raise InputError(
            "check_ungl_kette requires the degree condition; "
            f"it fails at {star.witness} ({star.lhs} < {star.rhs})"
        )
    for u, v, w in induced_paths_3(G):
        nu, nv, nw = set(G.adj[u]), set(G.adj[v]), set(G.adj[w])
        common = len(nu & nw)
        private = len(nv - (nu | nw))
        if not (common >= private >= 2):
            return ChainVerdict(False, witness=(u, v, w), common=common, private=private)
    return ChainVerdict(True)
