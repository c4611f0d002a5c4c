"""Cheap necessary conditions for expandability, used to prune searches.

Each filter either proves that a particular non-edge cannot be extended
(``witness_nonedge`` set) or, for the shared-neighbour rule, relies on a
counting bound that is only valid below ``ceil(3n/2)`` edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from hamexp.graph import Graph, NonEdge, bits, components, degree_profile, non_edges


class Reason(str, Enum):
    PENDANT = "pendant_nonedge"
    DEG2_OPEN = "deg2_open_neighborhood"
    DEG2_DEG3_DISTINCT = "deg2_deg3_distinct"
    DEG2_DEG3_SHARED = "deg2_deg3_shared"
    SHARED_NEIGHBOR = "shared_neighbor_two_deg2"
    DISCONNECTED = "disconnected"
    NONE = "none"


@dataclass(frozen=True)
class FilterVerdict:
    reason: Reason = Reason.NONE
    witness_nonedge: NonEdge | None = None

    @property
    def rejected(self) -> bool:
        return self.reason is not Reason.NONE


PASS = FilterVerdict()


def pendant_filter(g: Graph) -> FilterVerdict:
    """Reject when a vertex of degree <= 1 is avoided by some non-edge.

    Adding that non-edge still leaves the low-degree vertex unable to lie on
    a Hamiltonian cycle.
    """
    if g.n < 4:
        return PASS
    degs = degree_profile(g).degrees
    holes = non_edges(g)
    for v in range(g.n):
        if degs[v] <= 1:
            for e in holes:
                if v not in e:
                    return FilterVerdict(Reason.PENDANT, e)
    return PASS


def deg2_open_filter(g: Graph) -> FilterVerdict:
    """Reject a 2-vertex whose two neighbours are not adjacent.

    A cycle through the non-edge ``u1 u2`` would also have to use
    ``u1 - v - u2`` and close a triangle.
    """
    if g.n < 4:
        return PASS
    for v in range(g.n):
        if g.degree(v) == 2:
            u1, u2 = g.neighbors(v)
            if not g.has_edge(u1, u2):
                return FilterVerdict(Reason.DEG2_OPEN, NonEdge(u1, u2))
    return PASS


def deg2_deg3_filter(g: Graph) -> FilterVerdict:
    """Reject a 2-vertex ``v`` on a triangle ``v u1 u2`` with ``d(u1)=d(u2)=3``.

    With ``N(u1)={v,u2,v1}`` and ``N(u2)={v,u1,v2}``: if ``v1 != v2`` the
    non-edge ``u1 v2`` is not extendable, otherwise ``v v1`` is not.
    Only applied for ``n >= 7``.
    """
    if g.n < 7:
        return PASS
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        u1, u2 = g.neighbors(v)
        if not g.has_edge(u1, u2) or g.degree(u1) != 3 or g.degree(u2) != 3:
            continue
        (v1,) = bits(g.adj[u1] & ~(1 << v | 1 << u2))
        (v2,) = bits(g.adj[u2] & ~(1 << v | 1 << u1))
        if v1 != v2:
            return FilterVerdict(Reason.DEG2_DEG3_DISTINCT, NonEdge.of(u1, v2))
        return FilterVerdict(Reason.DEG2_DEG3_SHARED, NonEdge.of(v, v1))
    return PASS


def shared_neighbor_filter(g: Graph, m_budget: int) -> FilterVerdict:
    if g.n < 7:
        raise ValueError(f"shared-neighbour filter needs n >= 7, got n={g.n}")
    if m_budget >= math.ceil(3 * g.n / 2):
        raise ValueError(
            f"shared-neighbour filter only applies below ceil(3n/2)={math.ceil(3 * g.n / 2)} edges, "
            f"got budget {m_budget}"
        )
    twos = [v for v in range(g.n) if g.degree(v) == 2]
    for k, v in enumerate(twos):
        for w in twos[k + 1:]:
            if g.adj[v] & g.adj[w]:
                return FilterVerdict(Reason.SHARED_NEIGHBOR)
    return PASS


def connectivity_filter(g: Graph) -> FilterVerdict:
    """Reject disconnected graphs; one added edge cannot span two components."""
    comps = components(g)
    if len(comps) < 2:
        return PASS
    x = bits(comps[0])[0]
    y = bits(comps[1])[0]
    return FilterVerdict(Reason.DISCONNECTED, NonEdge.of(x, y))


def apply_filters(g: Graph, m_budget: int) -> FilterVerdict:
    """First rejecting verdict among pendant, deg2-open, deg2-deg3, shared-neighbour."""
    for check in (pendant_filter, deg2_open_filter, deg2_deg3_filter):
        verdict = check(g)
        if verdict.rejected:
            return verdict
    if g.n >= 7 and m_budget < math.ceil(3 * g.n / 2):
        return shared_neighbor_filter(g, m_budget)
    return PASS
