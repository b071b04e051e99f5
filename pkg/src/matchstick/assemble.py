"""Build full graphs from solved templates: mirror closure, rotational rings,
direction-changing adapters and open chains.

Ring convention: copies advance counterclockwise about the rail apex O, copy k
rotated by k*omega.  Rotating a solved base by +omega carries each upper-rail
vertex onto its mirror partner, so copy k's lower-rail vertices coincide with
copy k+1's upper-rail vertices; those coincidences are the seams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from mpmath import atan2, cos, mpf, pi, sin

from . import kernels
from .errors import AsymmetricFixture, MergeFailure, SeamMismatch, UnexpectedCollision
from .geometry import Line, Point, distance, reflect, rotate
from .graph import DEDUP_TOLERANCE, UnitGraph, unit_three_cycles
from .linkage import LinkageTemplate, RingSpec, SolveResult
from .precision import get_precision, scalar, scalar_to_str, tol

SEAM_TOLERANCE_OFFSET = 8  # merge tolerance 10**(8 - p), far below the dedup floor

#: Figure tables carry ~1e-14 coordinate noise, so assemblies built straight
#: from ingested fixtures use this merge tolerance instead of the solved one.
FIXTURE_SEAM_TOLERANCE = mpf("1e-12")


def _default_merge_tol(graphs) -> mpf:
    if any(g.meta.get("fixture") for g in graphs):
        return FIXTURE_SEAM_TOLERANCE
    return tol(SEAM_TOLERANCE_OFFSET)


@dataclass(frozen=True)
class Seam:
    """Pairs of (from-piece, to-piece) vertex ids that coincide after gluing."""

    pairs: tuple


def mirror_close(t: LinkageTemplate, result: SolveResult) -> UnitGraph:
    """Close the solved half across the mirror axis into the full base graph.

    Axis vertices are shared, not duplicated; designated triangles are the
    unit 3-cycles of the result.
    """
    if not t.axis:
        raise SeamMismatch("template has no axis vertices to glue the halves")
    pts = result.coords
    half_sorted = list(t.half)
    upper_sorted = list(t.upper)
    new_index = {v: i for i, v in enumerate(half_sorted)}
    mirrored_index = {u: len(half_sorted) + i for i, u in enumerate(upper_sorted)}

    vertices = [pts[v] for v in half_sorted]
    vertices.extend(pts[u].conj() for u in upper_sorted)

    def mapped(v):
        return new_index[v]

    def mirror_mapped(v):
        return mirrored_index[v] if v in mirrored_index else new_index[v]

    edges = set()
    for a, b in t.edges_plain:
        edges.add((min(mapped(a), mapped(b)), max(mapped(a), mapped(b))))
        ma, mb = mirror_mapped(a), mirror_mapped(b)
        edges.add((min(ma, mb), max(ma, mb)))
    for u, w in t.edges_crossed:
        a, b = mapped(u), mirror_mapped(w)
        edges.add((min(a, b), max(a, b)))
        a, b = mapped(w), mirror_mapped(u)
        edges.add((min(a, b), max(a, b)))

    labels = {}
    for name in ("A", "B", "E", "F", "G", "H"):
        if name in t.labels:
            labels[name] = mapped(t.labels[name])
    if "A" in t.labels:
        labels["C"] = mirror_mapped(t.labels["A"])
    if "F" in t.labels:
        labels["D"] = mirror_mapped(t.labels["F"])

    seam_tol = tol(10)
    meta = {
        "template": t.source,
        "n": result.spec.n,
        "apex_x": scalar_to_str(result.apex_x),
        "solver": {
            "residual_inf": scalar_to_str(result.residual_inf),
            "iterations": result.iterations,
            "min_singular": repr(result.min_singular),
        },
        "tolerances": {
            "precision": get_precision(),
            "solve_tol": scalar_to_str(tol(10)),
            "seam_merge_tol": scalar_to_str(tol(SEAM_TOLERANCE_OFFSET)),
        },
        "angles": {
            name: [[mapped(i) for i in tri] for tri in tris]
            for name, tris in t.angle_triples.items()
        },
        "upper_rail": [mapped(v) for v in t.rails],
        "lower_rail": [mirror_mapped(v) for v in t.rails],
    }
    g = UnitGraph(vertices=vertices, edges=sorted(edges), labels=labels, meta=meta)
    worst = mpf(0)
    for a, b in g.edges:
        worst = max(worst, abs(distance(g.vertices[a], g.vertices[b]) - 1))
    if worst > seam_tol:
        raise SeamMismatch(f"closed edge deviates from unit length by {worst}")
    designated = sorted(unit_three_cycles(g, mpf("1e-12")))
    return UnitGraph(
        vertices=vertices,
        edges=sorted(edges),
        designated=designated,
        labels=labels,
        meta=meta,
    )


def _axis_side(base: UnitGraph):
    """Signed distance from the mirror axis (BE labels, else the x-axis)."""
    if "B" in base.labels and "E" in base.labels:
        axis = Line.from_points(
            base.vertices[base.labels["B"]], base.vertices[base.labels["E"]]
        )
        return lambda p: axis.signed_distance(p)
    return lambda p: p.y


def _rail_sets(base: UnitGraph):
    """Degree-2 vertices split by axis side, with the mirror pairing."""
    side = _axis_side(base)
    deg = [0] * len(base.vertices)
    for a, b in base.edges:
        deg[a] += 1
        deg[b] += 1
    rails = [v for v, d in enumerate(deg) if d == 2]
    upper = sorted(v for v in rails if side(base.vertices[v]) > 0)
    lower = sorted(v for v in rails if side(base.vertices[v]) < 0)
    if len(upper) != len(lower) or not upper:
        raise SeamMismatch(
            f"rail sets unbalanced: {len(upper)} upper vs {len(lower)} lower"
        )
    return upper, lower


def ring_assemble(
    base: UnitGraph,
    spec: RingSpec,
    apex_x=None,
    n_copies: int | None = None,
    merge_tol=None,
) -> UnitGraph:
    """Union of rotated copies of the solved base with rail seams merged.

    ``n_copies`` below ``spec.n`` builds an open arc (no wraparound seam);
    the default closes the full ring.
    """
    if apex_x is None:
        if "apex_x" not in base.meta:
            raise MergeFailure("base graph carries no rail apex; pass apex_x")
        apex_x = scalar(base.meta["apex_x"])
    center = Point(apex_x, mpf(0))
    omega = spec.omega
    n = spec.n
    k_count = n if n_copies is None else int(n_copies)
    if not (1 <= k_count <= n):
        raise ValueError("n_copies must lie in [1, n]")
    closed = k_count == n

    upper, lower = _rail_sets(base)
    seam_tol = _default_merge_tol([base]) if merge_tol is None else mpf(merge_tol)
    # Rotation by +omega must carry each upper-rail vertex onto a lower one.
    partner = {}
    lower_pool = dict.fromkeys(lower)
    for u in upper:
        target = rotate(base.vertices[u], center, omega)
        best = min(lower_pool, key=lambda w: distance(base.vertices[w], target), default=None)
        if best is None or distance(base.vertices[best], target) > seam_tol:
            gap = None if best is None else distance(base.vertices[best], target)
            raise MergeFailure(
                f"rail vertex {u} misses its seam partner by {gap} (> {seam_tol})"
            )
        partner[u] = best
        lower_pool.pop(best)

    nv = len(base.vertices)
    parent = list(range(k_count * nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    seam_pairs = []
    for k in range(k_count - 1 if not closed else k_count):
        k_next = (k + 1) % k_count
        for u in upper:
            seam_pairs.append((k * nv + partner[u], k_next * nv + u))
            union(k * nv + partner[u], k_next * nv + u)

    # Copy-major vertex numbering; lowest (copy, index) representative wins.
    reps = sorted({find(i) for i in range(k_count * nv)})
    final_index = {r: i for i, r in enumerate(reps)}

    cos_k = [cos(k * omega) for k in range(k_count)]
    sin_k = [sin(k * omega) for k in range(k_count)]
    vertices = []
    for r in reps:
        k, i = divmod(r, nv)
        p = base.vertices[i]
        dx, dy = p.x - center.x, p.y
        vertices.append(Point(center.x + dx * cos_k[k] - dy * sin_k[k], dx * sin_k[k] + dy * cos_k[k]))

    edges = set()
    for k in range(k_count):
        off = k * nv
        for a, b in base.edges:
            ia, ib = final_index[find(off + a)], final_index[find(off + b)]
            edges.add((min(ia, ib), max(ia, ib)))
    designated = set()
    for k in range(k_count):
        off = k * nv
        for tri in base.designated:
            designated.add(tuple(sorted(final_index[find(off + i)] for i in tri)))

    meta = {
        "kind": "ring" if closed else "arc",
        "n": n,
        "copies": k_count,
        "apex_x": scalar_to_str(apex_x),
        "center": [scalar_to_str(center.x), "0.0"],
        "base_template": base.meta.get("template"),
        "designated_per_copy": len(base.designated),
        "seam_count": len(seam_pairs),
    }
    ring = UnitGraph(vertices=vertices, edges=sorted(edges), designated=sorted(designated), meta=meta)

    # Any surviving near-coincidence is a construction defect, not a seam.
    xs, ys = ring.float_xy()
    ia, ib = kernels.near_vertex_pairs(xs, ys, float(DEDUP_TOLERANCE) * 2)
    for a, b in zip(ia.tolist(), ib.tolist()):
        if distance(ring.vertices[a], ring.vertices[b]) < DEDUP_TOLERANCE:
            raise UnexpectedCollision(
                f"vertices {a} and {b} collide within the dedup tolerance"
            )
    return ring


def ring_rotation_displacement(ring: UnitGraph, center: Point, omega) -> mpf:
    """Max distance from each rotated vertex to the nearest ring vertex.

    Zero (to arithmetic noise) certifies rotational symmetry of order n.
    """
    xs, ys = ring.float_xy()
    co, so = float(cos(omega)), float(sin(omega))
    cxf = float(center.x)
    rx = (xs - cxf) * co - ys * so + cxf
    ry = (xs - cxf) * so + ys * co
    joint_x = np.concatenate([xs, rx])
    joint_y = np.concatenate([ys, ry])
    nv = xs.size
    ia, ib = kernels.near_vertex_pairs(joint_x, joint_y, 1e-6)
    best = {}
    for a, b in zip(ia.tolist(), ib.tolist()):
        if (a < nv) == (b < nv):
            continue
        rot, orig = (a, b) if a >= nv else (b, a)
        d = (joint_x[rot] - joint_x[orig]) ** 2 + (joint_y[rot] - joint_y[orig]) ** 2
        if rot not in best or d < best[rot][0]:
            best[rot] = (d, orig)
    worst = mpf(0)
    for rot in range(nv, 2 * nv):
        if rot not in best:
            raise UnexpectedCollision(f"rotated vertex {rot - nv} has no counterpart")
        orig = best[rot][1]
        p = rotate(ring.vertices[rot - nv], center, omega)
        worst = max(worst, distance(p, ring.vertices[orig]))
    return worst


def axis_reflect(g: UnitGraph) -> UnitGraph:
    """Reflect a labelled base graph across its BE axis, swapping A/C and F/D."""
    if "B" not in g.labels or "E" not in g.labels:
        raise AsymmetricFixture("labels B and E are required to locate the axis")
    axis = Line.from_points(g.vertices[g.labels["B"]], g.vertices[g.labels["E"]])
    vertices = [reflect(p, axis) for p in g.vertices]
    labels = dict(g.labels)
    for x, y in (("A", "C"), ("F", "D")):
        if x in labels and y in labels:
            labels[x], labels[y] = labels[y], labels[x]
    meta = dict(g.public_meta())
    meta["reflected_about_axis"] = True
    return UnitGraph(
        vertices=vertices,
        edges=g.edges,
        designated=g.designated,
        labels=labels,
        meta=meta,
    )


def make_adapter(base: UnitGraph) -> UnitGraph:
    """Reflect everything below the BE axis across its perpendicular bisector.

    The axis vertices must be symmetric about that bisector; edges attaching
    the lower half to the axis re-attach at the mirrored axis vertex.  The
    result's two rails are parallel.
    """
    if "B" not in base.labels or "E" not in base.labels:
        raise AsymmetricFixture("labels B and E are required to build an adapter")
    pb = base.vertices[base.labels["B"]]
    pe = base.vertices[base.labels["E"]]
    axis = Line.from_points(pb, pe)
    mid = Point((pb.x + pe.x) / 2, (pb.y + pe.y) / 2)
    g3 = Line(mid, axis.theta + pi / 2)

    side = {}
    for v, p in enumerate(base.vertices):
        s = axis.signed_distance(p)
        side[v] = 0 if abs(s) <= DEDUP_TOLERANCE else (1 if s > 0 else -1)
    axis_ids = sorted(v for v in side if side[v] == 0)
    lower = sorted(v for v in side if side[v] < 0)

    rho = {}
    for a in axis_ids:
        target = reflect(base.vertices[a], g3)
        best = min(axis_ids, key=lambda w: distance(base.vertices[w], target))
        if distance(base.vertices[best], target) > DEDUP_TOLERANCE:
            raise AsymmetricFixture(
                f"axis vertex {a} has no bisector-mirror partner on the axis"
            )
        rho[a] = best
    if sorted(rho.values()) != axis_ids:
        raise AsymmetricFixture("axis set is not symmetric about the bisector")

    vertices = [
        reflect(p, g3) if side[v] < 0 else p for v, p in enumerate(base.vertices)
    ]
    edges = set()
    for a, b in base.edges:
        sa, sb = side[a], side[b]
        if sa > 0 > sb or sb > 0 > sa:
            raise AsymmetricFixture("edge crosses the axis; adapter undefined")
        if sa == 0 and sb < 0:
            a = rho[a]
        elif sb == 0 and sa < 0:
            b = rho[b]
        edges.add((min(a, b), max(a, b)))

    labels = dict(base.labels)
    # The published adapter keeps C at the left rail end: swap the lower labels.
    for x, y in (("C", "D"),):
        if x in labels and y in labels:
            labels[x], labels[y] = labels[y], labels[x]
    meta = dict(base.public_meta())
    meta["kind"] = "adapter"
    meta.pop("apex_x", None)  # rails are parallel; there is no apex

    g = UnitGraph(
        vertices=vertices,
        edges=sorted(edges),
        designated=(),
        labels=labels,
        meta=meta,
    )
    designated = sorted(unit_three_cycles(g, mpf("1e-12")))
    return UnitGraph(
        vertices=vertices,
        edges=sorted(edges),
        designated=designated,
        labels=labels,
        meta=meta,
    )


def rail_directions(g: UnitGraph):
    """Direction angles (mod pi) of the two rails of a labelled base graph."""
    out = []
    for s, e in (("A", "F"), ("C", "D")):
        if s not in g.labels or e not in g.labels:
            raise AsymmetricFixture(f"labels {s}/{e} missing for rail direction")
        out.append(Line.from_points(g.vertices[g.labels[s]], g.vertices[g.labels[e]]).theta)
    return tuple(out)


def _ordered_seam(g: UnitGraph, start_label: str, end_label: str):
    """Rail vertices ordered by projection from the start label to the end."""
    upper, lower = _rail_sets(g)
    sv = g.labels.get(start_label)
    ev = g.labels.get(end_label)
    if sv is None or ev is None:
        raise SeamMismatch(f"labels {start_label}/{end_label} required for seams")
    members = upper if sv in upper else lower
    if sv not in members or ev not in members:
        raise SeamMismatch(f"seam labels {start_label}/{end_label} are not rail vertices")
    p0 = g.vertices[sv]
    d = g.vertices[ev] - p0
    dn = d.norm()
    u = Point(d.x / dn, d.y / dn)
    return tuple(sorted(members, key=lambda v: float((g.vertices[v] - p0).dot(u))))


def _rigid_fit(src_pts, dst_pts):
    """Orientation-preserving rigid transform mapping src onto dst, plus residual."""
    n = len(src_pts)
    cpx = sum(p.x for p in src_pts) / n
    cpy = sum(p.y for p in src_pts) / n
    cqx = sum(q.x for q in dst_pts) / n
    cqy = sum(q.y for q in dst_pts) / n
    sdot = mpf(0)
    scross = mpf(0)
    for p, q in zip(src_pts, dst_pts):
        px, py = p.x - cpx, p.y - cpy
        qx, qy = q.x - cqx, q.y - cqy
        sdot += px * qx + py * qy
        scross += px * qy - py * qx
    theta = atan2(scross, sdot)
    c, s = cos(theta), sin(theta)

    def transform(p: Point) -> Point:
        px, py = p.x - cpx, p.y - cpy
        return Point(cqx + px * c - py * s, cqy + px * s + py * c)

    worst = mpf(0)
    for p, q in zip(src_pts, dst_pts):
        worst = max(worst, distance(transform(p), q))
    return transform, theta, worst


def chain_assemble(pieces, merge_tol=None) -> UnitGraph:
    """Glue pieces in sequence: each next piece's A..F rail lands on the
    previous piece's C..D rail.

    ``pieces`` is a sequence of ``(UnitGraph, orientation)`` with orientation
    ``"direct"`` or ``"flipped"`` (flip mirrors the piece across its own BE
    axis first).  A single piece passes through unchanged.
    """
    prepared = []
    for item in pieces:
        g, orient = item if isinstance(item, tuple) else (item, "direct")
        if orient == "flipped":
            g = axis_reflect(g)
        elif orient != "direct":
            raise ValueError(f"unknown seam orientation {orient!r}")
        prepared.append(g)
    if not prepared:
        raise ValueError("chain needs at least one piece")
    if len(prepared) == 1:
        return prepared[0]

    seam_tol = _default_merge_tol(prepared) if merge_tol is None else mpf(merge_tol)
    placed_pts = [list(prepared[0].vertices)]
    transforms = ["identity"]
    seams = []
    for idx in range(1, len(prepared)):
        prev = prepared[idx - 1]
        cur = prepared[idx]
        out_ids = _ordered_seam(prev, "C", "D")
        in_ids = _ordered_seam(cur, "A", "F")
        if len(out_ids) != len(in_ids):
            raise SeamMismatch(
                f"seam size mismatch: {len(out_ids)} vs {len(in_ids)} at joint {idx}"
            )
        dst = [placed_pts[idx - 1][v] for v in out_ids]
        src = [cur.vertices[v] for v in in_ids]
        transform, theta, worst = _rigid_fit(src, dst)
        if worst > seam_tol:
            transform, theta, worst2 = _rigid_fit(list(reversed(src)), dst)
            if worst2 > seam_tol:
                raise SeamMismatch(
                    f"seam geometry incongruent at joint {idx} (residual {worst})"
                )
            in_ids = tuple(reversed(in_ids))
            worst = worst2
        placed_pts.append([transform(p) for p in cur.vertices])
        transforms.append(scalar_to_str(theta))
        seams.append(Seam(pairs=tuple(zip(out_ids, in_ids))))

    offsets = []
    total = 0
    for g in prepared:
        offsets.append(total)
        total += len(g.vertices)
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, seam in enumerate(seams):
        for out_v, in_v in seam.pairs:
            a = offsets[idx] + out_v
            b = offsets[idx + 1] + in_v
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    reps = sorted({find(i) for i in range(total)})
    final_index = {r: i for i, r in enumerate(reps)}
    vertices = []
    for r in reps:
        piece = 0
        while piece + 1 < len(offsets) and offsets[piece + 1] <= r:
            piece += 1
        vertices.append(placed_pts[piece][r - offsets[piece]])

    edges = set()
    designated = set()
    for idx, g in enumerate(prepared):
        off = offsets[idx]
        for a, b in g.edges:
            ia, ib = final_index[find(off + a)], final_index[find(off + b)]
            edges.add((min(ia, ib), max(ia, ib)))
        for tri in g.designated:
            designated.add(tuple(sorted(final_index[find(off + i)] for i in tri)))

    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    for idx, seam in enumerate(seams):
        for out_v, _ in seam.pairs:
            fi = final_index[find(offsets[idx] + out_v)]
            if deg.get(fi, 0) != 4:
                raise SeamMismatch(
                    f"merged seam vertex {fi} has degree {deg.get(fi, 0)}, expected 4"
                )

    meta = {
        "kind": "chain",
        "pieces": [g.meta.get("template") or g.meta.get("fixture") for g in prepared],
        "transforms": transforms,
        "designated_per_piece": [len(g.designated) for g in prepared],
    }
    out = UnitGraph(
        vertices=vertices, edges=sorted(edges), designated=sorted(designated), meta=meta
    )
    xs, ys = out.float_xy()
    ia, ib = kernels.near_vertex_pairs(xs, ys, float(DEDUP_TOLERANCE) * 2)
    for a, b in zip(ia.tolist(), ib.tolist()):
        if distance(out.vertices[a], out.vertices[b]) < DEDUP_TOLERANCE:
            raise UnexpectedCollision(f"vertices {a} and {b} collide after chaining")
    return out
