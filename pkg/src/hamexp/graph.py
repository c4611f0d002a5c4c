"""Simple undirected graphs stored as per-vertex neighbour bitsets.

Vertices are the integers ``0..n-1``.  ``adj[v]`` is a Python ``int`` whose
bit ``u`` is set iff ``uv`` is an edge.  Graphs are immutable; every
"mutation" returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple


class GraphError(ValueError):
    """Raised for malformed graph input or invalid graph operations."""


class NonEdge(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, x: int, y: int) -> "NonEdge":
        if x == y:
            raise GraphError(f"a non-edge needs two distinct vertices, got ({x}, {y})")
        return cls(x, y) if x < y else cls(y, x)


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    min_degree: int


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"need at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
                rest ^= low

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    @cached_property
    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        """Every ordered pair ``(u, v)`` of adjacent vertices."""
        return frozenset((u, v) for u in range(self.n) for v in iter_bits(self.adj[u]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def make_graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Build a graph on ``n`` vertices from vertex pairs; duplicates merge."""
    if n < 1:
        raise GraphError(f"need at least one vertex, got n={n}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Return ``g`` plus the edge ``e``; ``e`` must currently be a non-edge."""
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise GraphError(f"({u}, {v}) is not a pair of distinct vertices of the graph")
    if g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is already an edge")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def non_edges(g: Graph) -> list[NonEdge]:
    full = (1 << g.n) - 1
    out = []
    for u in range(g.n):
        missing = ~g.adj[u] & full & ~((1 << (u + 1)) - 1)
        out.extend(map(NonEdge._make, zip([u] * missing.bit_count(), iter_bits(missing))))
    return out


def degree_profile(g: Graph) -> DegreeProfile:
    degrees = tuple(nb.bit_count() for nb in g.adj)
    return DegreeProfile(degrees, min(degrees))


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def components(g: Graph) -> list[int]:
    """Connected components as vertex bitsets, ordered by smallest vertex."""
    unseen = (1 << g.n) - 1
    comps = []
    while unseen:
        seed = unseen & -unseen
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = g.adj[low.bit_length() - 1] & ~comp
            comp |= fresh
            frontier |= fresh
        comps.append(comp)
        unseen &= ~comp
    return comps
