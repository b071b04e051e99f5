"""Versioned graph file format with decimal-string coordinates.

Coordinates serialize as the shortest decimal strings that reparse exactly at
the current precision, never as binary floats; read-then-write of a canonical
file is byte-identical at the same precision.  Unknown meta keys survive a
round trip.
"""

from __future__ import annotations

import json

from .errors import ParseError, VersionError
from .geometry import Point
from .graph import UnitGraph
from .precision import get_precision, scalar, scalar_to_str

FORMAT_VERSION = "msf-graph/1"


def graph_to_dict(g: UnitGraph) -> dict:
    return {
        "format": FORMAT_VERSION,
        "precision": get_precision(),
        "vertices": [
            [i, scalar_to_str(p.x), scalar_to_str(p.y)] for i, p in enumerate(g.vertices)
        ],
        "edges": [list(e) for e in g.edges],
        "triangles": [list(t) for t in g.designated],
        "labels": dict(sorted(g.labels.items())),
        "meta": g.public_meta(),
    }


def graph_from_dict(doc: dict) -> UnitGraph:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_VERSION:
        raise VersionError(f"unsupported graph format {doc.get('format')!r}")
    try:
        rows = doc["vertices"]
        vertices = [None] * len(rows)
        for row in rows:
            i, xs, ys = int(row[0]), str(row[1]), str(row[2])
            vertices[i] = Point(scalar(xs), scalar(ys))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad vertex section: {exc}") from exc
    if any(v is None for v in vertices):
        raise ParseError("vertex ids are not a contiguous 0..n-1 range")
    try:
        edges = [tuple(int(x) for x in e) for e in doc["edges"]]
        triangles = [tuple(int(x) for x in t) for t in doc.get("triangles", [])]
        labels = {str(k): int(v) for k, v in doc.get("labels", {}).items()}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad edge/triangle/label section: {exc}") from exc
    meta = doc.get("meta", {})
    return UnitGraph(
        vertices=vertices, edges=edges, designated=triangles, labels=labels, meta=meta
    )


def dumps_graph(g: UnitGraph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True, separators=(",", ":")) + "\n"


def write_graph(g: UnitGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(g))


def read_graph(path) -> UnitGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    return graph_from_dict(doc)
