"""Graph JSON interchange and DOT export."""

from __future__ import annotations

import json
import math
from typing import Any

from hamexp.constructions import FamilyLabeling
from hamexp.graph import Graph, GraphError, make_graph


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def graph_from_json(data: Any) -> Graph:
    """Parse ``{"n": int, "edges": [[u, v], ...]}``; raises GraphError."""
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphError('graph JSON must be an object with "n" and "edges"')
    n, edges = data["n"], data["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError('"n" must be an integer')
    if not isinstance(edges, list):
        raise GraphError('"edges" must be a list')
    pairs = []
    for item in edges:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise GraphError(f"bad edge entry {item!r}")
        pairs.append(tuple(item))
    return make_graph(n, pairs)


def dumps_graph(g: Graph) -> str:
    return json.dumps(graph_to_json(g))


def loads_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_json(data)


def to_dot(g: Graph, fam: FamilyLabeling | None = None) -> str:
    """DOT text; family graphs get a_i/b_i/v labels and a two-ring layout."""
    family = fam is not None and fam.kind in ("even", "odd")
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        attrs = []
        if family:
            attrs.append(f'label="{fam.name(v)}"')
            side, i = fam.decode(v)
            if side == "v":
                x, y = 0.0, 0.0
            else:
                radius = 2.0 if side == "a" else 1.0
                angle = 2 * math.pi * (i - 1) / fam.p
                x, y = radius * math.cos(angle), radius * math.sin(angle)
            attrs.append(f'pos="{x:.3f},{y:.3f}!"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
