"""Isomorphism-invariant keys for small graphs.

Colour refinement seeded by degree, then individualisation of each vertex of
the first non-singleton cell, recursively.  Every discrete leaf gives a vertex
order; the key is the lexicographically least adjacency bit string over all
leaves, so equal keys mean isomorphic graphs and vice versa.
"""

from __future__ import annotations

from hamexp.graph import Graph

MAX_CANON_N = 10


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into other cells until stable.

    Splitting uses only cell positions and counts, so it commutes with vertex
    relabelling.
    """
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((g.adj[v] & mk).bit_count() for mk in masks) for v in cell}
            for key in sorted(set(sig.values())):
                out.append([v for v in cell if sig[v] == key])
        if len(out) == len(cells):
            return out
        cells = out


def _matrix_bits(g: Graph, order: list[int]) -> int:
    word = 0
    for i in range(g.n):
        u = order[i]
        for j in range(i + 1, g.n):
            word = word << 1 | (g.adj[u] >> order[j] & 1)
    return word


def _twins(g: Graph, u: int, v: int) -> bool:
    strip = ~(1 << u | 1 << v)
    return g.adj[u] & strip == g.adj[v] & strip


def canonical_key(g: Graph) -> bytes:
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical_key supports n <= {MAX_CANON_N}, got {g.n}")
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degree(v), []).append(v)
    start = _refine(g, [by_degree[d] for d in sorted(by_degree)])

    best = -1

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            word = _matrix_bits(g, [c[0] for c in cells])
            if best < 0 or word < best:
                best = word
            return
        explored: list[int] = []
        for v in cells[target]:
            # swapping twins inside one cell is an automorphism fixing the
            # partition, so their subtrees yield the same leaves
            if any(_twins(g, u, v) for u in explored):
                continue
            explored.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(g, split))

    search(start)
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + best.to_bytes((nbits + 7) // 8 or 1, "big")
