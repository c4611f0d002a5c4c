"""Exact Hamiltonian path / cycle decisions and expandability reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from hamexp import _kernels
from hamexp.graph import Graph, GraphError, NonEdge, iter_bits, non_edges

DEFAULT_DP_LIMIT = 24
DP_HARD_LIMIT = 28


@dataclass(frozen=True)
class CycleWitness:
    """A Hamiltonian cycle, read cyclically, that uses the non-edge ``through``."""

    order: tuple[int, ...]
    through: NonEdge

    def to_json(self) -> dict:
        return {"through": [self.through.u, self.through.v], "order": list(self.order)}


@dataclass
class ExpandabilityReport:
    entries: dict[NonEdge, CycleWitness | None] = field(default_factory=dict)

    @property
    def expandable(self) -> bool:
        return all(w is not None for w in self.entries.values())

    @property
    def failures(self) -> list[NonEdge]:
        return [e for e, w in self.entries.items() if w is None]

    def to_json(self) -> dict:
        return {
            "expandable": self.expandable,
            "entries": [
                {"through": [e.u, e.v], "order": None if w is None else list(w.order)}
                for e, w in self.entries.items()
            ],
        }


def adjacency_array(g: Graph) -> np.ndarray:
    return np.array(g.adj, dtype=np.int64)


def ham_path(g: Graph, s: int, t: int, dp_limit: int = DEFAULT_DP_LIMIT) -> list[int] | None:
    """A Hamiltonian path from ``s`` to ``t``, or ``None`` if there is none.

    Graphs with at most ``dp_limit`` vertices go through the subset DP; larger
    ones through pruned backtracking.  Both are exact.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise GraphError(f"endpoints ({s}, {t}) out of range for n={g.n}")
    if s == t:
        raise GraphError("path endpoints must differ")
    if g.n <= min(dp_limit, DP_HARD_LIMIT):
        path = _kernels.ham_path_dp(adjacency_array(g), g.n, s, t)
        return [int(v) for v in path] if len(path) else None
    return _backtrack_path(g, s, t)


def ham_cycle_containing(
    g: Graph, e: tuple[int, int], dp_limit: int = DEFAULT_DP_LIMIT
) -> CycleWitness | None:
    x, y = e
    if g.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is an edge, not a non-edge")
    through = NonEdge.of(x, y)
    if g.n < 3:
        return None
    path = ham_path(g, through.u, through.v, dp_limit)
    return None if path is None else CycleWitness(tuple(path), through)


def expandability_report(g: Graph, dp_limit: int = DEFAULT_DP_LIMIT) -> ExpandabilityReport:
    return ExpandabilityReport({e: ham_cycle_containing(g, e, dp_limit) for e in non_edges(g)})


def is_expandable(g: Graph, dp_limit: int = DEFAULT_DP_LIMIT) -> bool:
    """Like ``expandability_report(g).expandable`` but stops at the first failure."""
    if g.n <= min(dp_limit, DP_HARD_LIMIT):
        return bool(_kernels.is_expandable(adjacency_array(g), g.n))
    return all(ham_cycle_containing(g, e, dp_limit) is not None for e in non_edges(g))


def _witness_fields(g: Graph, w: CycleWitness):
    """``(order, x, y)`` if the witness is well-typed for ``g``, else None."""
    try:
        order = tuple(w.order)
        x, y = w.through
    except (TypeError, ValueError):
        return None
    if g.n < 3 or len(order) != g.n or set(map(type, order)) != {int}:
        return None
    if type(x) is not int or type(y) is not int or not (0 <= x < g.n and 0 <= y < g.n) or x == y:
        return None
    if g.has_edge(x, y):
        return None
    return order, x, y


_matrix_slot: list = [None, None]


def _matrix(g: Graph) -> np.ndarray:
    # one-slot cache: witness sweeps check many cycles against the same graph
    if _matrix_slot[0] is not g:
        mat = np.zeros((g.n, g.n), np.uint8)
        for u in range(g.n):
            mat[u, list(iter_bits(g.adj[u]))] = 1
        _matrix_slot[:] = [g, mat]
    return _matrix_slot[1]


def validate_witness(g: Graph, w: CycleWitness) -> bool:
    """Check a witness in O(n) against ``g`` without any search."""
    fields = _witness_fields(g, w)
    if fields is None:
        return False
    order, x, y = fields
    try:
        arr = np.fromiter(order, np.int64, g.n)
    except OverflowError:
        return False
    return bool(_kernels.check_cycle(_matrix(g), arr, x, y))


def _validate_witness_py(g: Graph, w: CycleWitness) -> bool:
    fields = _witness_fields(g, w)
    if fields is None:
        return False
    order, x, y = fields
    n = g.n
    if set(order) != _vertex_set(n):
        return False
    # all cyclic neighbour pairs but the one through x-y must be edges
    at = order.index(x)
    if y != order[at - 1] and y != order[(at + 1) % n]:
        return False
    hits = sum(map(g.edge_pairs.__contains__, zip(order, order[1:])))
    return hits + ((order[-1], order[0]) in g.edge_pairs) == n - 1


@lru_cache(maxsize=None)
def _vertex_set(n: int) -> frozenset[int]:
    return frozenset(range(n))


def _backtrack_path(g: Graph, s: int, t: int) -> list[int] | None:
    n = g.n
    adj = g.adj
    full = (1 << n) - 1
    tbit = 1 << t

    def reachable(start: int, allowed: int) -> int:
        seen = frontier = 1 << start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = adj[low.bit_length() - 1] & allowed & ~seen
            seen |= fresh
            frontier |= fresh
        return seen

    def feasible(cur: int, unvisited: int) -> bool:
        # unvisited still contains t; cur is the live end of the path
        live = unvisited | (1 << cur)
        for v in iter_bits(unvisited):
            avail = (adj[v] & live).bit_count()
            need = 1 if v == t else 2
            if avail < need:
                return False
        return reachable(cur, live) & unvisited == unvisited

    path = [s]

    def extend(cur: int, unvisited: int) -> bool:
        if unvisited == tbit:
            if adj[cur] & tbit:
                path.append(t)
                return True
            return False
        if not feasible(cur, unvisited):
            return False
        cands = adj[cur] & unvisited & ~tbit
        # a neighbour with a single remaining exit must be taken next
        forced = [
            v for v in iter_bits(cands)
            if (adj[v] & (unvisited | (1 << cur))).bit_count() <= 2
        ]
        if len(forced) > 1:
            return False
        order = forced if forced else list(iter_bits(cands))
        for v in order:
            path.append(v)
            if extend(v, unvisited & ~(1 << v)):
                return True
            path.pop()
        return False

    if n == 2:
        return [s, t] if adj[s] & tbit else None
    return path if extend(s, full & ~(1 << s)) else None
