"""Certification of unit graphs: lengths, regularity, planarity, triangle census.

Scans run in two stages: a coarse float64 grid prefilter (cell size 0.5, see
``kernels``) proposes candidates, and every near-event closer than the
promotion cutoff is re-verified at full precision.  Failures are verdicts,
never exceptions; all report lists are canonically sorted so output is
deterministic regardless of backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mpf, nstr

from . import kernels
from .geometry import (
    SegmentRelation,
    distance,
    point_segment_distance,
    segment_relation,
    segment_segment_distance,
)
from .graph import UnitGraph, degree_histogram, unit_three_cycles


@dataclass(frozen=True)
class ToleranceProfile:
    """Thresholds operationalizing exact incidences vs genuine micro-gaps.

    Separations below ``incidence`` count as touching, above ``clearance`` as
    certified separated; the band between is indeterminate and fails
    certification loudly.
    """

    name: str
    unit_tol: mpf
    incidence: mpf
    clearance: mpf
    census_tol: mpf
    collinear_tol: float = 1e-10  # radians, direction grouping for chains
    corner_tol_deg: float = 1e-6  # degrees around 60 for chain triangles
    near_event_cutoff: float = 1e-3  # float64 distance that forces re-verification

    def __post_init__(self):
        if not self.incidence < self.clearance:
            raise ValueError("incidence threshold must be below clearance threshold")

    @staticmethod
    def solved() -> "ToleranceProfile":
        return ToleranceProfile(
            name="solved",
            unit_tol=mpf("1e-12"),
            incidence=mpf("1e-12"),
            clearance=mpf("1e-7"),
            census_tol=mpf("1e-12"),
        )

    @staticmethod
    def fixture() -> "ToleranceProfile":
        # The printed 20-decimal tables carry ~1e-14 noise; edge lengths are
        # good to 1e-13, far below every genuine gap in the constructions.
        return ToleranceProfile(
            name="fixture",
            unit_tol=mpf("1e-13"),
            incidence=mpf("1e-12"),
            clearance=mpf("1e-7"),
            census_tol=mpf("1e-12"),
        )

    @staticmethod
    def sketch() -> "ToleranceProfile":
        return ToleranceProfile(
            name="sketch",
            unit_tol=mpf("0.05"),
            incidence=mpf("1e-12"),
            clearance=mpf("1e-7"),
            census_tol=mpf("0.05"),
            collinear_tol=0.02,
            corner_tol_deg=5.0,
        )

    @staticmethod
    def named(name: str) -> "ToleranceProfile":
        if name not in ("solved", "fixture", "sketch"):
            raise ValueError(f"unknown profile {name!r}")
        return getattr(ToleranceProfile, name)()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "unit_tol": nstr(self.unit_tol, 6),
            "incidence": nstr(self.incidence, 6),
            "clearance": nstr(self.clearance, 6),
            "census_tol": nstr(self.census_tol, 6),
            "collinear_tol": repr(self.collinear_tol),
            "corner_tol_deg": repr(self.corner_tol_deg),
            "near_event_cutoff": repr(self.near_event_cutoff),
        }


VERDICT_ORDER = ("unit", "regular4", "planar", "no_additional")


@dataclass(frozen=True)
class VerificationReport:
    degree_histogram: dict
    max_edge_deviation: mpf
    min_vertex_distance: mpf | None
    min_vertex_witness: tuple | None
    min_vertex_edge_distance: mpf | None
    min_vertex_edge_witness: tuple | None
    crossings: tuple
    incidences: tuple
    indeterminate: tuple
    triangle_count: int
    designated_count: int
    extra_unit_triangles: tuple
    larger_triangles: tuple
    verdicts: dict
    profile: ToleranceProfile

    def passed(self, required=VERDICT_ORDER) -> bool:
        return all(self.verdicts[name] for name in required)

    def first_failing(self, required=VERDICT_ORDER):
        for name in VERDICT_ORDER:
            if name in required and not self.verdicts[name]:
                return name
        return None

    def to_dict(self) -> dict:
        def s(x, digits=20):
            return None if x is None else nstr(x, digits)

        return {
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "max_edge_deviation": s(self.max_edge_deviation),
            "min_vertex_distance": s(self.min_vertex_distance),
            "min_vertex_witness": self.min_vertex_witness,
            "min_vertex_edge_distance": s(self.min_vertex_edge_distance),
            "min_vertex_edge_witness": self.min_vertex_edge_witness,
            "crossings": list(self.crossings),
            "incidences": list(self.incidences),
            "indeterminate": list(self.indeterminate),
            "triangle_count": self.triangle_count,
            "designated_count": self.designated_count,
            "extra_unit_triangles": [list(t) for t in self.extra_unit_triangles],
            "larger_triangles": list(self.larger_triangles),
            "verdicts": dict(self.verdicts),
            "profile": self.profile.to_dict(),
        }

    def to_text(self) -> str:
        v = self.verdicts
        lines = [
            f"profile: {self.profile.name}",
            f"degrees: {dict(sorted(self.degree_histogram.items()))}",
            f"max |edge length - 1|: {nstr(self.max_edge_deviation, 6)}",
        ]
        if self.min_vertex_distance is not None:
            lines.append(
                f"min vertex-vertex: {nstr(self.min_vertex_distance, 12)}"
                f"  witness {self.min_vertex_witness}"
            )
        if self.min_vertex_edge_distance is not None:
            lines.append(
                f"min vertex-edge:   {nstr(self.min_vertex_edge_distance, 12)}"
                f"  witness {self.min_vertex_edge_witness}"
            )
        lines.append(
            f"triangles: {self.triangle_count} unit 3-cycles vs {self.designated_count}"
            f" designated; larger additional: {len(self.larger_triangles)}"
        )
        lines.append(f"crossings: {len(self.crossings)}")
        for c in self.crossings[:5]:
            lines.append(f"  {c}")
        lines.append(f"vertex-on-edge incidences: {len(self.incidences)}")
        for c in self.incidences[:5]:
            lines.append(f"  {c}")
        if self.indeterminate:
            lines.append(f"indeterminate-band separations: {len(self.indeterminate)}")
            for c in self.indeterminate[:5]:
                lines.append(f"  {c}")
        lines.append(
            "verdicts: "
            + "  ".join(f"{k}={'PASS' if v[k] else 'FAIL'}" for k in VERDICT_ORDER)
        )
        return "\n".join(lines)


def _candidate_min(values_f64, positions, margin=1e-9):
    """Indices whose float64 value could still be the true minimum."""
    if len(values_f64) == 0:
        return []
    lo = min(values_f64)
    return [positions[i] for i, v in enumerate(values_f64) if v <= lo + margin]


def min_separations(g: UnitGraph):
    """Minimum vertex-vertex and vertex-edge distances with witnesses.

    Returns ``(vv_min, vv_pair, ve_min, (vertex, edge))``; entries are None
    when the graph is too small to define them.
    """
    xs, ys = g.float_xy()
    ea, eb = g.edge_arrays()
    vv_min = vv_wit = None
    if len(g.vertices) >= 2:
        cutoff = 1e-3
        span = max(xs.max() - xs.min(), ys.max() - ys.min(), 1.0) * 2 + 1
        while True:
            ia, ib = kernels.near_vertex_pairs(xs, ys, cutoff)
            if ia.size or cutoff > span:
                break
            cutoff *= 8
        d64 = np.sqrt((xs[ia] - xs[ib]) ** 2 + (ys[ia] - ys[ib]) ** 2)
        cand = _candidate_min(d64.tolist(), list(zip(ia.tolist(), ib.tolist())))
        for i, j in sorted(cand):
            d = distance(g.vertices[i], g.vertices[j])
            if vv_min is None or d < vv_min:
                vv_min, vv_wit = d, (i, j)
    ve_min = ve_wit = None
    if len(g.vertices) >= 3 and len(g.edges) >= 1:
        cutoff = 1e-3
        span = max(xs.max() - xs.min(), ys.max() - ys.min(), 1.0) * 2 + 1
        while True:
            vv, ee, dd = kernels.near_vertex_edge_pairs(xs, ys, ea, eb, cutoff)
            if vv.size or cutoff > span:
                break
            cutoff *= 8
        cand = _candidate_min(dd.tolist(), list(zip(vv.tolist(), ee.tolist())))
        for v, e in sorted(cand):
            a, b = g.edges[e]
            d = point_segment_distance(g.vertices[v], g.vertices[a], g.vertices[b])
            if ve_min is None or d < ve_min:
                ve_min, ve_wit = d, (v, (a, b))
    return vv_min, vv_wit, ve_min, ve_wit


def _adjacent_overlap_candidates(g: UnitGraph, screen=1e-3):
    """Edge pairs sharing a vertex that are near-collinear and co-directed."""
    xs, ys = g.float_xy()
    incident: dict[int, list] = {}
    for e, (a, b) in enumerate(g.edges):
        incident.setdefault(a, []).append(e)
        incident.setdefault(b, []).append(e)
    out = []
    for v in sorted(incident):
        edges = incident[v]
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                e1, e2 = edges[i], edges[j]
                a1, b1 = g.edges[e1]
                a2, b2 = g.edges[e2]
                o1 = b1 if a1 == v else a1
                o2 = b2 if a2 == v else a2
                u1x, u1y = xs[o1] - xs[v], ys[o1] - ys[v]
                u2x, u2y = xs[o2] - xs[v], ys[o2] - ys[v]
                n1 = math.hypot(u1x, u1y)
                n2 = math.hypot(u2x, u2y)
                cr = abs(u1x * u2y - u1y * u2x) / (n1 * n2)
                dt = u1x * u2x + u1y * u2y
                if cr < screen and dt > 0:
                    out.append((min(e1, e2), max(e1, e2)))
    return sorted(set(out))


def crossing_scan(g: UnitGraph, prof: ToleranceProfile):
    """Classify edge pairs and vertex-on-edge incidences at full precision.

    Returns ``(crossings, incidences, near_pairs)``: proper crossings and
    collinear overlaps as witness dicts, incidences as (vertex, edge,
    distance) dicts, and the full-precision separations of every promoted
    non-touching pair (for the indeterminate-band check).
    """
    xs, ys = g.float_xy()
    ea, eb = g.edge_arrays()
    p1, p2, _, _ = kernels.edge_pair_candidates(xs, ys, ea, eb, prof.near_event_cutoff)
    pairs = sorted(set(zip(p1.tolist(), p2.tolist())) | set(_adjacent_overlap_candidates(g)))

    crossings = []
    near = []
    v = g.vertices
    for e1, e2 in pairs:
        a, b = g.edges[e1]
        c, d = g.edges[e2]
        rel = segment_relation(v[a], v[b], v[c], v[d], eps=prof.incidence)
        if rel is SegmentRelation.PROPER_CROSSING:
            crossings.append(
                {"edges": [[a, b], [c, d]], "relation": rel.value}
            )
        elif rel is SegmentRelation.COLLINEAR_OVERLAP:
            crossings.append(
                {"edges": [[a, b], [c, d]], "relation": rel.value}
            )
        elif rel is SegmentRelation.DISJOINT:
            sep = segment_segment_distance(v[a], v[b], v[c], v[d])
            near.append(((e1, e2), sep))

    incidences = []
    vv_, ee_, dd_ = kernels.near_vertex_edge_pairs(xs, ys, ea, eb, prof.near_event_cutoff)
    ve_near = []
    for vi, e in zip(vv_.tolist(), ee_.tolist()):
        a, b = g.edges[e]
        d = point_segment_distance(v[vi], v[a], v[b])
        if d < prof.incidence:
            incidences.append({"vertex": vi, "edge": [a, b], "distance": nstr(d, 12)})
        else:
            ve_near.append(((vi, (a, b)), d))

    crossings.sort(key=lambda c: c["edges"])
    incidences.sort(key=lambda c: (c["vertex"], c["edge"]))
    return crossings, incidences, (near, ve_near)


def crossing_scan_bruteforce(g: UnitGraph, prof: ToleranceProfile):
    """All-pairs full-precision reference scan (oracle for small graphs)."""
    v = g.vertices
    crossings = []
    for e1 in range(len(g.edges)):
        for e2 in range(e1 + 1, len(g.edges)):
            a, b = g.edges[e1]
            c, d = g.edges[e2]
            if len({a, b, c, d}) < 4:
                # Shared-vertex pairs can only offend by overlapping.
                rel = segment_relation(v[a], v[b], v[c], v[d], eps=prof.incidence)
                if rel is SegmentRelation.COLLINEAR_OVERLAP:
                    crossings.append({"edges": [[a, b], [c, d]], "relation": rel.value})
                continue
            rel = segment_relation(v[a], v[b], v[c], v[d], eps=prof.incidence)
            if rel in (SegmentRelation.PROPER_CROSSING, SegmentRelation.COLLINEAR_OVERLAP):
                crossings.append({"edges": [[a, b], [c, d]], "relation": rel.value})
    incidences = []
    for vi in range(len(v)):
        for e, (a, b) in enumerate(g.edges):
            if vi in (a, b):
                continue
            d = point_segment_distance(v[vi], v[a], v[b])
            if d < prof.incidence:
                incidences.append({"vertex": vi, "edge": [a, b], "distance": nstr(d, 12)})
    crossings.sort(key=lambda c: c["edges"])
    incidences.sort(key=lambda c: (c["vertex"], c["edge"]))
    return crossings, incidences


def _collinear_chains(g: UnitGraph, prof: ToleranceProfile):
    """Maximal chains of collinear edges joined at shared endpoints."""
    xs, ys = g.float_xy()
    ne = len(g.edges)
    ang = np.empty(ne)
    for e, (a, b) in enumerate(g.edges):
        ang[e] = math.atan2(ys[b] - ys[a], xs[b] - xs[a]) % math.pi
    parent = list(range(ne))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    incident: dict[int, list] = {}
    for e, (a, b) in enumerate(g.edges):
        incident.setdefault(a, []).append(e)
        incident.setdefault(b, []).append(e)
    for v in incident:
        edges = incident[v]
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                e1, e2 = edges[i], edges[j]
                diff = abs(ang[e1] - ang[e2])
                diff = min(diff, math.pi - diff)
                if diff < prof.collinear_tol:
                    r1, r2 = find(e1), find(e2)
                    if r1 != r2:
                        parent[max(r1, r2)] = min(r1, r2)
    groups: dict[int, list] = {}
    for e in range(ne):
        groups.setdefault(find(e), []).append(e)
    chains = []
    for edges in groups.values():
        if len(edges) < 2:
            continue
        degree: dict[int, int] = {}
        for e in edges:
            for vv in g.edges[e]:
                degree[vv] = degree.get(vv, 0) + 1
        ends = sorted(v for v, d in degree.items() if d == 1)
        if len(ends) != 2:
            continue  # branching or closed run; not a triangle side
        interior = sorted(v for v, d in degree.items() if d > 1)
        chains.append({"ends": tuple(ends), "through": tuple(interior), "size": len(edges)})
    chains.sort(key=lambda c: (c["ends"], c["size"]))
    return chains


def additional_triangle_scan(g: UnitGraph, prof: ToleranceProfile):
    """Find unit 3-cycles beyond the designated set and larger (side >= 2)
    equilateral triangles whose sides are collinear edge chains."""
    cycles = sorted(unit_three_cycles(g, prof.census_tol))
    designated = set(g.designated)
    if designated:
        extra = tuple(t for t in cycles if t not in designated)
    else:
        # Sketch-style graphs declare only a count; report the full census.
        extra = tuple(cycles)

    chains = _collinear_chains(g, prof)
    by_ends: dict[tuple, dict] = {}
    for c in chains:
        by_ends[c["ends"]] = c
    corners = sorted({v for c in chains for v in c["ends"]})
    larger = []
    v = g.vertices

    def chain_for(a, b):
        return by_ends.get((min(a, b), max(a, b)))

    def corner_ok(apex, p, q):
        ux, uy = v[p].x - v[apex].x, v[p].y - v[apex].y
        wx, wy = v[q].x - v[apex].x, v[q].y - v[apex].y
        dot = ux * wx + uy * wy
        cr = ux * wy - uy * wx
        ang = math.degrees(math.atan2(abs(float(cr)), float(dot)))
        return abs(ang - 60.0) < prof.corner_tol_deg

    for i in range(len(corners)):
        for j in range(i + 1, len(corners)):
            cij = chain_for(corners[i], corners[j])
            if cij is None:
                continue
            for k in range(j + 1, len(corners)):
                cjk = chain_for(corners[j], corners[k])
                cik = chain_for(corners[i], corners[k])
                if cjk is None or cik is None:
                    continue
                if not (cij["size"] == cjk["size"] == cik["size"] >= 2):
                    continue
                a, b, c = corners[i], corners[j], corners[k]
                if corner_ok(a, b, c) and corner_ok(b, a, c) and corner_ok(c, a, b):
                    through = tuple(
                        sorted(set(cij["through"]) | set(cjk["through"]) | set(cik["through"]))
                    )
                    larger.append(
                        {
                            "side": cij["size"],
                            "corners": [a, b, c],
                            "through": list(through),
                        }
                    )
    larger.sort(key=lambda t: (t["side"], t["corners"]))
    return cycles, extra, tuple(larger)


def verify(g: UnitGraph, prof: ToleranceProfile | None = None) -> VerificationReport:
    """Full certification scan; failures appear as verdicts, not errors."""
    if prof is None:
        prof = ToleranceProfile.solved()

    hist = degree_histogram(g)
    max_dev = mpf(0)
    for a, b in g.edges:
        dev = abs(distance(g.vertices[a], g.vertices[b]) - 1)
        if dev > max_dev:
            max_dev = dev

    vv_min, vv_wit, ve_min, ve_wit = min_separations(g)
    crossings, incidences, (ee_near, ve_near) = crossing_scan(g, prof)

    indeterminate = []
    if vv_min is not None and prof.incidence <= vv_min < prof.clearance:
        indeterminate.append(
            {"kind": "vertex-vertex", "witness": list(vv_wit), "distance": nstr(vv_min, 12)}
        )
    for (vi, edge), d in ve_near:
        if prof.incidence <= d < prof.clearance:
            indeterminate.append(
                {"kind": "vertex-edge", "witness": [vi, list(edge)], "distance": nstr(d, 12)}
            )
    for (e1, e2), d in ee_near:
        if prof.incidence <= d < prof.clearance:
            indeterminate.append(
                {"kind": "edge-edge", "witness": [e1, e2], "distance": nstr(d, 12)}
            )
    indeterminate.sort(key=lambda x: (x["kind"], x["witness"]))

    cycles, extra, larger = additional_triangle_scan(g, prof)
    designated_count = len(g.designated) or int(g.meta.get("declared_triangles", 0))

    verdicts = {
        "unit": bool(max_dev <= prof.unit_tol),
        "regular4": set(hist.keys()) == {4} if hist else False,
        "planar": not crossings and not incidences and not indeterminate,
        "no_additional": len(cycles) == designated_count and not larger,
    }
    return VerificationReport(
        degree_histogram=hist,
        max_edge_deviation=max_dev,
        min_vertex_distance=vv_min,
        min_vertex_witness=vv_wit,
        min_vertex_edge_distance=ve_min,
        min_vertex_edge_witness=ve_wit,
        crossings=tuple(crossings),
        incidences=tuple(incidences),
        indeterminate=tuple(indeterminate),
        triangle_count=len(cycles),
        designated_count=designated_count,
        extra_unit_triangles=extra,
        larger_triangles=larger,
        verdicts=verdicts,
        profile=prof,
    )
