"""Unit-graph container, figure-table ingestion and structural primitives."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from mpmath import mpf

from .errors import MergeAmbiguity, ParseError
from .geometry import Point, distance
from .precision import scalar

DEDUP_TOLERANCE = mpf("1e-9")

#: Census tolerance used when deriving designated triangles of high-precision
#: fixtures (well above table rounding, far below any genuine vertex gap).
FIXTURE_CENSUS_TOLERANCE = mpf("1e-12")


@dataclass(frozen=True)
class RawFixture:
    """Verbatim figure table: decimal coordinate strings plus raw edge rows.

    Edge rows may contain self-loops and duplicates exactly as printed;
    ingestion sanitizes them.  ``precision_class`` is ``high`` for the
    20-decimal tables and ``sketch`` for the 2-decimal overview figures.
    """

    name: str
    coordinates: tuple  # ((row_id, x_str, y_str), ...)
    edge_rows: tuple  # ((a, b), ...) in row ids
    precision_class: str
    declared_triangles: int
    labels: Mapping[str, int] = field(default_factory=dict)
    angles: Mapping[str, tuple] = field(default_factory=dict)
    n: int | None = None
    notes: str = ""


@dataclass(frozen=True)
class UnitGraph:
    """Immutable geometric graph with designated unit triangles.

    ``vertices`` are arbitrary-precision points, ``edges`` sorted index pairs,
    ``designated`` the triangles the construction intends (the census compares
    every unit 3-cycle against this set).  ``labels`` maps role names
    (A..H) to vertex indices; ``meta`` carries provenance.
    """

    vertices: tuple
    edges: tuple
    designated: tuple = ()
    labels: Mapping[str, int] = field(default_factory=dict)
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(
            self, "designated", tuple(sorted(tuple(sorted(t)) for t in self.designated))
        )
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "meta", dict(self.meta))
        nv = len(self.vertices)
        eset = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop edge ({a}, {b})")
            if not (0 <= a < nv and 0 <= b < nv):
                raise ValueError(f"edge index out of range ({a}, {b})")
            if (a, b) in eset:
                raise ValueError(f"duplicate edge ({a}, {b})")
            eset.add((a, b))
        for t in self.designated:
            for pair in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
                if pair not in eset:
                    raise ValueError(f"designated triangle {t} has non-edge side {pair}")

    # -- cached float views for the scan kernels ---------------------------

    def float_xy(self) -> tuple[np.ndarray, np.ndarray]:
        cache = self.meta.get("_f64")
        if cache is None:
            xs = np.array([float(p.x) for p in self.vertices], dtype=np.float64)
            ys = np.array([float(p.y) for p in self.vertices], dtype=np.float64)
            cache = (xs, ys)
            self.meta["_f64"] = cache  # meta is the one mutable pocket
        return cache

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        cache = self.meta.get("_earr")
        if cache is None:
            ea = np.array([e[0] for e in self.edges], dtype=np.int64)
            eb = np.array([e[1] for e in self.edges], dtype=np.int64)
            cache = (ea, eb)
            self.meta["_earr"] = cache
        return cache

    def adjacency(self) -> dict[int, set]:
        adj: dict[int, set] = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def public_meta(self) -> dict:
        return {k: v for k, v in self.meta.items() if not k.startswith("_")}


def _merge_rows(points: dict, tol: mpf) -> dict:
    """Union-find merge of rows closer than ``tol``; lowest row id wins."""
    ids = sorted(points)
    xs = np.array([float(points[i].x) for i in ids])
    ys = np.array([float(points[i].y) for i in ids])
    from . import kernels

    ia, ib = kernels.near_vertex_pairs(xs, ys, float(tol) * 4)
    parent = {i: i for i in ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in zip(ia, ib):
        u, v = ids[a], ids[b]
        if distance(points[u], points[v]) < tol:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list] = {}
    for i in ids:
        groups.setdefault(find(i), []).append(i)
    for rep, members in groups.items():
        if len(members) > 1:
            worst = max(
                distance(points[a], points[b])
                for k, a in enumerate(members)
                for b in members[k + 1 :]
            )
            if worst > tol:
                raise MergeAmbiguity(
                    f"merge chain {members} spans {worst} > dedup tolerance {tol}"
                )
    return {i: find(i) for i in ids}


def ingest_fixture(raw: RawFixture) -> UnitGraph:
    """Sanitize a raw figure table into a UnitGraph.

    Rows within the dedup tolerance merge (the figures duplicate axis vertices
    between mirrored halves); self-loop and duplicate edge rows are dropped.
    High-precision fixtures get their designated triangles derived as all unit
    3-cycles; sketches only carry the declared count.
    """
    points: dict[int, Point] = {}
    for row in raw.coordinates:
        try:
            rid, xs, ys = int(row[0]), str(row[1]), str(row[2])
            points[rid] = Point(scalar(xs), scalar(ys))
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{raw.name}: bad coordinate row {row!r}") from exc
    rep = _merge_rows(points, DEDUP_TOLERANCE)
    merged_ids = sorted(set(rep.values()))
    index = {rid: i for i, rid in enumerate(merged_ids)}
    row_map = {rid: index[rep[rid]] for rid in rep}

    edges = set()
    dropped_loops = 0
    dropped_dupes = 0
    for a, b in raw.edge_rows:
        if a not in row_map or b not in row_map:
            raise ParseError(f"{raw.name}: edge row ({a}, {b}) references unknown vertex")
        ia, ib = row_map[a], row_map[b]
        if ia == ib:
            dropped_loops += 1
            continue
        e = (min(ia, ib), max(ia, ib))
        if e in edges:
            dropped_dupes += 1
        edges.add(e)

    vertices = tuple(points[rid] for rid in merged_ids)
    labels = {}
    for name, rid in raw.labels.items():
        if rid not in row_map:
            raise ParseError(f"{raw.name}: label {name} references unknown row {rid}")
        labels[name] = row_map[rid]

    meta = {
        "fixture": raw.name,
        "precision_class": raw.precision_class,
        "declared_triangles": raw.declared_triangles,
        "row_map": {str(k): v for k, v in sorted(row_map.items())},
        "dropped_self_loops": dropped_loops,
        "dropped_duplicate_edges": dropped_dupes,
        "angles": {
            k: [[row_map[i] for i in triple] for triple in v] for k, v in raw.angles.items()
        },
    }
    if raw.n is not None:
        meta["n"] = raw.n

    g = UnitGraph(vertices=vertices, edges=sorted(edges), labels=labels, meta=meta)
    if raw.precision_class == "high":
        designated = unit_three_cycles(g, FIXTURE_CENSUS_TOLERANCE)
        g = UnitGraph(
            vertices=vertices,
            edges=sorted(edges),
            designated=sorted(designated),
            labels=labels,
            meta=meta,
        )
    return g


def degree_histogram(g: UnitGraph) -> dict[int, int]:
    """Multiset of vertex degrees as a degree -> count map."""
    deg = [0] * len(g.vertices)
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    hist: dict[int, int] = {}
    for d in deg:
        hist[d] = hist.get(d, 0) + 1
    return hist


def unit_three_cycles(g: UnitGraph, tol) -> set:
    """All 3-cycles whose three side lengths are within ``tol`` of 1."""
    tol = mpf(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    from . import kernels

    ea, eb = g.edge_arrays()
    ti, tj, tk = kernels.triangle_cycles(len(g.vertices), ea, eb)
    out = set()
    v = g.vertices
    for a, b, c in zip(ti.tolist(), tj.tolist(), tk.tolist()):
        if (
            abs(distance(v[a], v[b]) - 1) < tol
            and abs(distance(v[a], v[c]) - 1) < tol
            and abs(distance(v[b], v[c]) - 1) < tol
        ):
            out.add((a, b, c))
    return out
