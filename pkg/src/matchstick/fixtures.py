"""Registry of the built-in figure fixtures and embedded reference values."""

from __future__ import annotations

import json
from importlib import resources

from .errors import ParseError
from .graph import RawFixture, UnitGraph, ingest_fixture

#: Fixture names in registry order.
FIXTURE_NAMES = ("fig1-left", "fig1-right", "g1", "g2", "g4")

#: Published readout targets per solvable template (degrees / unit lengths).
#: ``omega`` is 360/n; ``gh`` is the distance between the labelled near-pair.
REFERENCE_READOUTS = {
    "g1": {
        "n": 100,
        "alpha": "91.58566772584003",
        "beta": "43.94364026236698",
        "gamma": "119.90161279889431",
        "delta": None,
        "gh": "0.00171718039014",
    },
    "g2": {
        "n": 169,
        "alpha": "78.95050838942406",
        "beta": "38.40835335322197",
        "gamma": "119.99637583181277",
        "delta": "122.42510282308054",
        "gh": "0.00006325366750",
    },
}

#: The order-100 ring variant built from a third subgraph is recorded only by
#: its counts; no coordinates are published for it.
G3_COUNTS = {"n": 100, "triangles_per_copy": 92, "triangles_total": 9200}

_CACHE: dict[str, UnitGraph] = {}


def _data_file(name: str) -> str:
    return name.replace("-", "_") + ".json"


def load_raw(name: str) -> RawFixture:
    """Load the verbatim figure table for ``name``."""
    if name not in FIXTURE_NAMES:
        raise ParseError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    ref = resources.files("matchstick.data").joinpath(_data_file(name))
    doc = json.loads(ref.read_text())
    return RawFixture(
        name=doc["name"],
        coordinates=tuple((int(r[0]), str(r[1]), str(r[2])) for r in doc["coordinates"]),
        edge_rows=tuple((int(a), int(b)) for a, b in doc["edges"]),
        precision_class=doc["precision_class"],
        declared_triangles=int(doc["declared_triangles"]),
        labels={k: int(v) for k, v in doc["labels"].items()},
        angles={k: tuple(tuple(t) for t in v) for k, v in doc["angles"].items()},
        n=doc["n"],
        notes=doc.get("notes", ""),
    )


def load(name: str) -> UnitGraph:
    """Ingest (and cache) the named fixture.

    The cache keeps coordinates parsed at the precision active on first
    load; set the working precision before loading fixtures.
    """
    if name not in _CACHE:
        _CACHE[name] = ingest_fixture(load_raw(name))
    return _CACHE[name]
