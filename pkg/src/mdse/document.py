"""Text format for graphs (``.mdse`` files, UTF-8 JSON).

::

    {
      "version": 1,
      "groups": [
        {"role": "star", "priors": [0.4, 0.25, 0.35]}
      ],
      "events": [
        {"kind": "star", "label": "rates move"}
      ],
      "edges": [
        {"src": 0, "dst": 3, "weight": 0.7}
      ]
    }

Vertex ids are implicit: hypotheses first, in group then member order,
followed by events, all zero-based.  :func:`serialize_graph` writes one
entry per line with keys in the order above and edges sorted by
``(src, dst)``; floats use Python's shortest round-trip repr.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from mdse.errors import DocumentSyntaxError, MdseError, NotFrozen, SchemaError
from mdse.graph import MdseGraph

FORMAT_VERSION = 1

SCHEMA = {
    "type": "object",
    "required": ["version", "groups", "events", "edges"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["role", "priors"],
                "additionalProperties": False,
                "properties": {
                    "role": {"enum": ["star", "prime"]},
                    "priors": {"type": "array", "minItems": 1, "items": {"type": "number"}},
                },
            },
        },
        "events": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["star", "prime"]},
                    "label": {"type": "string"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "weight"],
                "additionalProperties": False,
                "properties": {
                    "src": {"type": "integer", "minimum": 0},
                    "dst": {"type": "integer", "minimum": 0},
                    "weight": {"type": "number"},
                },
            },
        },
    },
}

_validator = jsonschema.Draft202012Validator(SCHEMA)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "document"


def parse_graph(text: str, checked: bool = True) -> MdseGraph:
    """Parse a document into a frozen graph.

    With ``checked=False`` structural problems (loops, duplicate edges,
    illegal directions) are kept so that validation can report them;
    schema, range and normalization errors are raised either way.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, location=f"line {exc.lineno} column {exc.colno}") from None
    error = jsonschema.exceptions.best_match(_validator.iter_errors(doc))
    if error is not None:
        raise SchemaError(error.message, location=_path(error.absolute_path))

    g = MdseGraph()
    for idx, group in enumerate(doc["groups"]):
        _located(f"groups[{idx}]", g.add_hypothesis_group, group["priors"], group["role"])
    for idx, event in enumerate(doc["events"]):
        _located(f"events[{idx}]", g.add_event, event["kind"], event.get("label"))
    add = g.add_edge if checked else g._add_edge_unchecked
    for idx, edge in enumerate(doc["edges"]):
        _located(f"edges[{idx}]", add, int(edge["src"]), int(edge["dst"]), edge["weight"])
    return g.freeze()


def _located(where, fn, *args):
    try:
        return fn(*args)
    except MdseError as exc:
        exc.location = where
        raise


def canonical_ids(graph: MdseGraph) -> dict[int, int]:
    """Map current vertex ids to document ids (hypotheses first, then events)."""
    order = [h for g in graph.groups for h in g.ids] + [e.id for e in graph.events]
    return {old: new for new, old in enumerate(order)}


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def serialize_graph(graph: MdseGraph) -> str:
    if not graph.frozen:
        raise NotFrozen("only frozen graphs can be serialized")
    ids = canonical_ids(graph)
    groups = [{"role": g.role.value, "priors": list(g.priors)} for g in graph.groups]
    events = []
    for ev in graph.events:
        item = {"kind": ev.kind.value}
        if ev.label is not None:
            item["label"] = ev.label
        events.append(item)
    edges = sorted(
        ({"src": ids[e.src], "dst": ids[e.dst], "weight": e.weight} for e in graph.edges),
        key=lambda d: (d["src"], d["dst"]),
    )

    def block(name, items, last=False):
        if not items:
            return [f'  "{name}": []' + ("" if last else ",")]
        lines = [f'  "{name}": [']
        lines += ["    " + _dump(x) + ("," if i < len(items) - 1 else "") for i, x in enumerate(items)]
        lines.append("  ]" + ("" if last else ","))
        return lines

    lines = ["{", f'  "version": {FORMAT_VERSION},']
    lines += block("groups", groups)
    lines += block("events", events)
    lines += block("edges", edges, last=True)
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(path, checked: bool = True) -> MdseGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), checked=checked)


def save_graph(graph: MdseGraph, path) -> None:
    Path(path).write_text(serialize_graph(graph), encoding="utf-8")
