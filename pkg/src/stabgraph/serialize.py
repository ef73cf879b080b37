"""JSON persistence and Graphviz DOT export for stabilizer graphs.

The JSON form is strict: every list sorted ascending, edges as ``[j, k]``
with ``j < k``, all indices 0-based.  DOT output is export-only and uses
1-based labels to match hand-drawn diagrams.
"""

from __future__ import annotations

import json

import jsonschema

from .errors import SchemaError
from .graph import StabilizerGraph

GRAPH_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "hollow": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "loops": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "signs": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "required": ["n", "edges", "hollow", "loops", "signs"],
    "additionalProperties": False,
}


def graph_to_dict(g: StabilizerGraph) -> dict:
    return {
        "n": g.n,
        "edges": [[j, k] for j, k in g.edges],
        "hollow": sorted(g.hollow),
        "loops": sorted(g.loops),
        "signs": sorted(g.signs),
    }


def graph_to_json(g: StabilizerGraph) -> str:
    return json.dumps(graph_to_dict(g), separators=(", ", ": "))


def graph_from_dict(data) -> StabilizerGraph:
    """Validate ``data`` against the graph schema and build the graph.

    Raises
    ------
    SchemaError
        On wrong structure, unsorted or duplicate entries, or out-of-range
        indices.
    """
    try:
        jsonschema.validate(data, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from None
    n = data["n"]
    edges = [tuple(e) for e in data["edges"]]
    for j, k in edges:
        if not j < k:
            raise SchemaError(f"edge {[j, k]} must be written with the smaller index first")
        if k >= n:
            raise SchemaError(f"edge {[j, k]} references a node outside 0..{n - 1}")
    if edges != sorted(set(edges)):
        raise SchemaError("edges must be sorted and unique")
    for key in ("hollow", "loops", "signs"):
        nodes = data[key]
        if nodes != sorted(set(nodes)):
            raise SchemaError(f"{key} must be sorted and unique")
        if nodes and nodes[-1] >= n:
            raise SchemaError(f"{key} references a node outside 0..{n - 1}")
    return StabilizerGraph(n, edges, data["hollow"], data["loops"], data["signs"])


def graph_from_json(text: str) -> StabilizerGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def export_dot(g: StabilizerGraph, name: str = "stabilizer") -> str:
    """Render ``g`` as an undirected DOT graph.

    Solid nodes are filled black, hollow nodes are white outlines, loops
    are self edges and signed nodes carry a ``−`` external label.  The
    output depends only on the graph value.
    """
    lines = [f"graph {name} {{", "  node [shape=circle, fixedsize=true, width=0.4];"]
    for j in range(g.n):
        attrs = [f'label="{j + 1}"']
        if g.is_hollow(j):
            attrs += ['style="solid"', 'fillcolor="white"', 'fontcolor="black"']
        else:
            attrs += ['style="filled"', 'fillcolor="black"', 'fontcolor="white"']
        if g.is_signed(j):
            attrs.append('xlabel="−"')
        lines.append(f"  {j + 1} [{', '.join(attrs)}];")
    for j in sorted(g.loops):
        lines.append(f"  {j + 1} -- {j + 1};")
    for j, k in g.edges:
        lines.append(f"  {j + 1} -- {k + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
