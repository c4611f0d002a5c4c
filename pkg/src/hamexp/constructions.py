"""Minimum hamiltonian-expandable graphs and their explicit witnesses.

Family graphs use the labels ``a_1..a_p``, ``b_1..b_p`` (and ``v`` for odd
``n``) mapped to vertices as ``a_i -> i-1``, ``b_i -> p+i-1``, ``v -> 2p``.

Even family (``n = 2p``, ``p >= 4``): cycles ``a_1..a_p`` and ``b_1..b_p``,
rungs ``a_i b_i`` for ``2 <= i <= p-1`` and the crossing edges ``a_1 b_p``,
``a_p b_1``.  Columns ``1`` and ``p`` have no rung but are joined by all
four edges between them.

Odd family (``n = 2p+1``, ``p >= 3``): a ladder with all ``p`` rungs whose
four corners are joined to the extra vertex ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from hamexp.graph import Graph, GraphError, NonEdge, make_graph
from hamexp.oracle import CycleWitness

Kind = Literal["small3", "small4", "small5", "small6", "even", "odd"]

P3_EDGES = [(0, 1), (1, 2)]
PAW_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3)]
BUTTERFLY_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]
# Lexicographically least expandable 9-edge graph on 6 vertices, found by
# exhausting all C(15, 9) = 5005 edge sets with a brute-force permutation
# oracle: K4 on {0,1,2,3} and the triangle {0,4,5} glued at vertex 0.
SIX_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (4, 5)]

_SMALL = {3: ("small3", P3_EDGES), 4: ("small4", PAW_EDGES),
          5: ("small5", BUTTERFLY_EDGES), 6: ("small6", SIX_EDGES)}


@dataclass(frozen=True)
class FamilyLabeling:
    kind: Kind
    n: int
    p: int = 0

    def a(self, i: int) -> int:
        return i - 1

    def b(self, i: int) -> int:
        return self.p + i - 1

    @property
    def v(self) -> int:
        if self.kind != "odd":
            raise GraphError("only the odd family has the extra vertex")
        return 2 * self.p

    @property
    def a_index(self) -> dict[str, int]:
        return {f"a_{i}": self.a(i) for i in range(1, self.p + 1)}

    @property
    def b_index(self) -> dict[str, int]:
        return {f"b_{i}": self.b(i) for i in range(1, self.p + 1)}

    def decode(self, x: int) -> tuple[str, int]:
        """``('a', i)``, ``('b', i)`` or ``('v', 0)`` for a family vertex."""
        if self.kind == "odd" and x == 2 * self.p:
            return ("v", 0)
        if 0 <= x < self.p:
            return ("a", x + 1)
        if self.p <= x < 2 * self.p:
            return ("b", x - self.p + 1)
        raise GraphError(f"vertex {x} is not part of this {self.kind} family graph")

    def name(self, x: int) -> str:
        if self.kind not in ("even", "odd"):
            return str(x)
        side, i = self.decode(x)
        return f"v_{self.n}" if side == "v" else f"{side}_{i}"


def exp_h(n: int) -> int:
    """Minimum edge count of a hamiltonian-expandable graph on ``n`` vertices."""
    if n < 3:
        raise ValueError(f"exp_h is defined for n >= 3, got {n}")
    return {3: 2, 4: 4, 5: 6}.get(n, math.ceil(3 * n / 2))


def even_edges(p: int) -> list[tuple[int, int]]:
    if p < 4:
        raise ValueError(f"even family needs p >= 4, got {p}")
    a = lambda i: i - 1  # noqa: E731
    b = lambda i: p + i - 1  # noqa: E731
    edges = [(a(i), a(i % p + 1)) for i in range(1, p + 1)]
    edges += [(b(i), b(i % p + 1)) for i in range(1, p + 1)]
    edges += [(a(i), b(i)) for i in range(2, p)]
    edges += [(a(1), b(p)), (a(p), b(1))]
    return edges


def odd_edges(p: int) -> list[tuple[int, int]]:
    if p < 3:
        raise ValueError(f"odd family needs p >= 3, got {p}")
    a = lambda i: i - 1  # noqa: E731
    b = lambda i: p + i - 1  # noqa: E731
    v = 2 * p
    edges = [(a(i), a(i + 1)) for i in range(1, p)] + [(a(p), v), (v, a(1))]
    edges += [(b(i), b(i + 1)) for i in range(1, p)] + [(b(p), v), (v, b(1))]
    edges += [(a(i), b(i)) for i in range(1, p + 1)]
    # the corner edges to v are listed twice in the construction; set semantics
    edges += [(a(1), v), (b(1), v), (a(p), v), (b(p), v)]
    return edges


def build_even(p: int) -> tuple[Graph, FamilyLabeling]:
    edges = even_edges(p)
    return make_graph(2 * p, edges), FamilyLabeling("even", 2 * p, p)


def build_odd(p: int) -> tuple[Graph, FamilyLabeling]:
    edges = odd_edges(p)
    return make_graph(2 * p + 1, edges), FamilyLabeling("odd", 2 * p + 1, p)


def build_minimum(n: int) -> tuple[Graph, FamilyLabeling]:
    if n < 3:
        raise ValueError(f"no expandable graph family for n={n} (need n >= 3)")
    if n in _SMALL:
        kind, edges = _SMALL[n]
        return make_graph(n, edges), FamilyLabeling(kind, n)
    if n % 2:
        return build_odd((n - 1) // 2)
    return build_even(n // 2)


# -- witness templates ------------------------------------------------------
#
# Walkers emit vertex lists directly; sides are A=0, B=1 (and V for the extra
# odd vertex) so that vertex(side, col) = side*p + col - 1.  Runs are built
# from strided ranges because the large-n sweeps call this millions of times.

A, B, V = 0, 1, 2


class _Ladder:
    def __init__(self, p: int) -> None:
        self.p = p
        self.v = 2 * p

    def at(self, side: int, col: int) -> int:
        return side * self.p + col - 1

    def rail(self, side: int, c1: int, c2: int) -> list[int]:
        step = 1 if c2 >= c1 else -1
        return list(range(self.at(side, c1), self.at(side, c2) + step, step))

    def zigzag_down(self, hi: int, lo: int, side: int) -> list[int]:
        """Columns ``hi..lo``, entering ``hi`` on ``side``; each column is crossed
        by its rung, so the side alternates from column to column."""
        here = side * self.p - 1
        there = (1 - side) * self.p - 1
        out = [0] * (2 * (hi - lo + 1))
        out[0::4] = range(here + hi, here + lo - 1, -2)
        out[1::4] = range(there + hi, there + lo - 1, -2)
        out[2::4] = range(there + hi - 1, there + lo - 1, -2)
        out[3::4] = range(here + hi - 1, here + lo - 1, -2)
        return out

    def uturn(self, j: int, lo: int, entry: int) -> list[int]:
        """Rail ``entry`` from column ``j`` down to ``lo``, rung, back up to ``j``."""
        return self.rail(entry, j, lo) + self.rail(1 - entry, lo, j)


@lru_cache(maxsize=None)
def _ladder(p: int) -> _Ladder:
    return _Ladder(p)


def _exit_side_down(hi: int, lo: int, entry: int) -> int:
    """Side on which ``zigzag_down(hi, lo, entry)`` leaves column ``lo``."""
    return entry if (hi - lo) % 2 else 1 - entry


@lru_cache(maxsize=None)
def _swap_perm(n: int, p: int) -> list[int]:
    return [(x + p) % (2 * p) if x < 2 * p else x for x in range(n)]


@lru_cache(maxsize=None)
def _reflect_perm(p: int) -> list[int]:
    """Column reversal ``k -> p+1-k`` of the even graph."""
    return [(x // p) * p + p - 1 - x % p for x in range(2 * p)]


def _mapped(perm: list[int], seq: list[int]) -> list[int]:
    return list(map(perm.__getitem__, seq))


def _even_path(lad: _Ladder, x: tuple[int, int], y: tuple[int, int]) -> list[int]:
    """Hamiltonian path between non-adjacent ``x`` and ``y`` of the even graph.

    Normal forms (after the a<->b swap and the column reversal, both
    automorphisms):
      * ``a_1 b_1``: around the outside of the ladder;
      * ``x = a_i`` with ``i < col(y) <= p-1``: zig-zag down from ``a_i`` to
        column 2, through columns 1 and p (joined by all four edges, so any
        entry/exit sides work), zig-zag down to ``col(y)+1`` and finish with a
        U-turn over columns ``col(y)..i+1``.
    """
    p = lad.p
    (sx, i), (sy, j) = x, y
    if i == j:
        # only a_1 b_1 and a_p b_p are non-edges inside a column
        if i == p:
            return _mapped(_reflect_perm(p), _even_path(lad, (A, 1), (B, 1)))
        return [lad.at(A, 1)] + lad.rail(B, p, 2) + lad.rail(A, 2, p) + [lad.at(B, 1)]
    if i > j:
        return _even_path(lad, y, x)
    if sx == B:
        return _mapped(_swap_perm(2 * p, p), _even_path(lad, (A, i), (1 - sy, j)))
    if j == p:
        # a_i a_p or a_i b_p with i >= 2: reflect so that y lands in column 1
        return _mapped(_reflect_perm(p), _even_path(lad, (sy, 1), (A, p + 1 - i)))

    entry = 1 - sy  # the closing U-turn enters column j on this side
    lead = A if (A if j == p - 1 else _exit_side_down(p - 1, j + 1, A)) == entry else B
    if i == 1:
        head = [lad.at(A, 1), lad.at(1 - lead, p), lad.at(B, 1), lad.at(lead, p)]
    else:
        head = [lad.at(A, i), lad.at(B, i)]
        side = B
        if i > 2:
            head += lad.zigzag_down(i - 1, 2, B)
            side = _exit_side_down(i - 1, 2, B)
        head += [lad.at(side, 1), lad.at(1 - lead, p), lad.at(1 - side, 1), lad.at(lead, p)]
    body = [] if j == p - 1 else lad.zigzag_down(p - 1, j + 1, lead)
    return head + body + lad.uturn(j, i + 1, entry)


def _odd_path(lad: _Ladder, x: tuple[int, int], y: tuple[int, int]) -> list[int]:
    """Hamiltonian path between non-adjacent ``x`` and ``y`` of the odd graph.

    The ladder is walked downward from ``x`` to column 1, through ``v`` to
    column ``p``, zig-zagged down to ``col(y)+1`` and closed by a U-turn that
    ends at ``y``.  Non-edges at ``v`` start at ``v`` instead.
    """
    p = lad.p
    if y[0] == V:
        x, y = y, x
    if x[0] == V:
        side, k = y
        if side == B:
            return _mapped(_swap_perm(2 * p + 1, p), _odd_path(lad, x, (A, k)))
        lead = A if _exit_side_down(p, k + 1, A) == B else B
        return [lad.v] + lad.zigzag_down(p, k + 1, lead) + lad.uturn(k, 1, B)
    (sx, i), (sy, j) = x, y
    if i > j:
        return _odd_path(lad, y, x)
    if sx == B:
        return _mapped(_swap_perm(2 * p + 1, p), _odd_path(lad, (A, i), (1 - sy, j)))
    entry = 1 - sy
    head = [lad.at(A, i), lad.at(B, i)]
    if i > 1:
        head += lad.zigzag_down(i - 1, 1, B)
    head.append(lad.v)
    if j == p:
        return head + lad.uturn(j, i + 1, entry)
    lead = A if _exit_side_down(p, j + 1, A) == entry else B
    return head + lad.zigzag_down(p, j + 1, lead) + lad.uturn(j, i + 1, entry)


_SIDES = {"a": A, "b": B, "v": V}


def template_witness(fam: FamilyLabeling, g: Graph | None, e: tuple[int, int]) -> CycleWitness:
    """Witness cycle through the non-edge ``e`` of a family graph, without search.

    ``g`` may be ``None`` (useful for very large ``n``); otherwise ``e`` is
    checked to be a non-edge of ``g``.
    """
    if fam.kind not in ("even", "odd"):
        raise GraphError(f"no template for the small graph kind {fam.kind!r}")
    x, y = e
    if g is not None and g.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is an edge, not a non-edge")
    lx, ly = fam.decode(x), fam.decode(y)
    nonadjacent = _even_nonadjacent if fam.kind == "even" else _odd_nonadjacent
    if not nonadjacent(fam.p, lx, ly):
        raise GraphError(f"({x}, {y}) is an edge of the {fam.kind} family graph")
    walk = _even_path if fam.kind == "even" else _odd_path
    order = walk(_ladder(fam.p), (_SIDES[lx[0]], lx[1]), (_SIDES[ly[0]], ly[1]))
    return CycleWitness(tuple(order), NonEdge.of(x, y))


def _even_nonadjacent(p: int, x: tuple[str, int], y: tuple[str, int]) -> bool:
    (sx, i), (sy, j) = x, y
    if x == y:
        return False
    if sx == sy:
        return abs(i - j) not in (1, p - 1)
    if i == j:
        return i in (1, p)
    return {i, j} != {1, p}


def _odd_nonadjacent(p: int, x: tuple[str, int], y: tuple[str, int]) -> bool:
    if x == y:
        return False
    if x[0] == "v" or y[0] == "v":
        k = y[1] if x[0] == "v" else x[1]
        return k not in (1, p)
    (sx, i), (sy, j) = x, y
    if sx == sy:
        return abs(i - j) != 1
    return i != j


def family_non_edges(fam: FamilyLabeling) -> list[NonEdge]:
    """Non-edges of a family graph straight from the labels (works for any n)."""
    out = []
    for x in range(fam.n):
        lx = fam.decode(x)
        for y in range(x + 1, fam.n):
            ly = fam.decode(y)
            apart = (_even_nonadjacent(fam.p, lx, ly) if fam.kind == "even"
                     else _odd_nonadjacent(fam.p, lx, ly))
            if apart:
                out.append(NonEdge(x, y))
    return out
