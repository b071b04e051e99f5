"""Pure-numpy implementations of the coarse float64 scan kernels.

These are the prefilter stage of the verifier: they must never miss a
candidate (full-precision confirmation happens upstream), and both backends
must return identical, canonically sorted arrays.
"""

from __future__ import annotations

import numpy as np


def _grid_keys(cx: np.ndarray, cy: np.ndarray) -> tuple[np.ndarray, np.int64]:
    """Collision-free scalar keys for integer cells, with room for +-1 probes."""
    ny0 = cy.min() - 2
    stride = np.int64(cy.max() - ny0 + 4)
    return (cx - cx.min() + 2) * stride + (cy - ny0), stride


def _cell_of(x: np.ndarray, y: np.ndarray, cell: float) -> tuple[np.ndarray, np.ndarray]:
    return np.floor(x / cell).astype(np.int64), np.floor(y / cell).astype(np.int64)


def _block_pairs(sa: np.ndarray, ca: np.ndarray, sb: np.ndarray, cb: np.ndarray):
    """Cross-product index pairs between blocks (sa, ca) x (sb, cb)."""
    m = ca * cb
    total = int(m.sum())
    if total == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    blk = np.repeat(np.arange(m.size), m)
    within = np.arange(total) - np.repeat(np.cumsum(m) - m, m)
    aa = sa[blk] + within // cb[blk]
    bb = sb[blk] + within % cb[blk]
    return aa, bb


def _within_pairs(starts: np.ndarray, counts: np.ndarray):
    """Unordered index pairs within each block."""
    n = int(counts.sum())
    loc = np.arange(n) - np.repeat(starts, counts)
    rep = loc
    total = int(rep.sum())
    if total == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    jj = np.repeat(np.arange(n), rep)
    r = np.arange(total) - np.repeat(np.cumsum(rep) - rep, rep)
    ii = jj - loc[jj] + r
    return ii, jj


def near_vertex_pairs(xs, ys, cutoff):
    """All vertex pairs (i < j) within float64 distance ``cutoff``."""
    n = xs.size
    if n < 2:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    cell = max(0.5, cutoff * (1 + 1e-9))
    cx, cy = _cell_of(xs, ys, cell)
    keys, stride = _grid_keys(cx, cy)
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    uk, starts, counts = np.unique(ks, return_index=True, return_counts=True)

    pos_a = []
    pos_b = []
    ii, jj = _within_pairs(starts, counts)
    pos_a.append(ii)
    pos_b.append(jj)
    for off in (1, stride - 1, stride, stride + 1):
        tgt = uk + off
        loc = np.searchsorted(uk, tgt)
        ok = (loc < uk.size) & (uk[np.minimum(loc, uk.size - 1)] == tgt)
        aa, bb = _block_pairs(starts[ok], counts[ok], starts[loc[ok]], counts[loc[ok]])
        pos_a.append(aa)
        pos_b.append(bb)
    pa = order[np.concatenate(pos_a)]
    pb = order[np.concatenate(pos_b)]
    d2 = (xs[pa] - xs[pb]) ** 2 + (ys[pa] - ys[pb]) ** 2
    keep = d2 <= cutoff * cutoff
    pa, pb = pa[keep], pb[keep]
    lo = np.minimum(pa, pb)
    hi = np.maximum(pa, pb)
    srt = np.lexsort((hi, lo))
    return lo[srt], hi[srt]


def _point_seg_dist(px, py, ax, ay, bx, by):
    abx, aby = bx - ax, by - ay
    den = abx * abx + aby * aby
    t = ((px - ax) * abx + (py - ay) * aby) / den
    t = np.clip(t, 0.0, 1.0)
    qx, qy = ax + t * abx, ay + t * aby
    return np.sqrt((px - qx) ** 2 + (py - qy) ** 2)


def _edge_cell_incidence(xs, ys, ea, eb, cell, inflate):
    """(cell-key, edge) incidence for bboxes inflated by ``inflate``."""
    ax, ay, bx, by = xs[ea], ys[ea], xs[eb], ys[eb]
    lox = np.floor((np.minimum(ax, bx) - inflate) / cell).astype(np.int64)
    hix = np.floor((np.maximum(ax, bx) + inflate) / cell).astype(np.int64)
    loy = np.floor((np.minimum(ay, by) - inflate) / cell).astype(np.int64)
    hiy = np.floor((np.maximum(ay, by) + inflate) / cell).astype(np.int64)
    nx, ny = hix - lox + 1, hiy - loy + 1
    cells_per_edge = nx * ny
    total = int(cells_per_edge.sum())
    blk = np.repeat(np.arange(ea.size), cells_per_edge)
    within = np.arange(total) - np.repeat(np.cumsum(cells_per_edge) - cells_per_edge, cells_per_edge)
    ccx = lox[blk] + within // ny[blk]
    ccy = loy[blk] + within % ny[blk]
    return ccx, ccy, blk


def near_vertex_edge_pairs(xs, ys, ea, eb, cutoff):
    """(vertex, edge, dist) triples with vertex not an endpoint, dist <= cutoff."""
    if ea.size == 0 or xs.size == 0:
        e = np.empty(0, np.int64)
        return e, e, np.empty(0, np.float64)
    cell = max(0.5, cutoff * (1 + 1e-9))
    vcx, vcy = _cell_of(xs, ys, cell)
    ecx, ecy, eid = _edge_cell_incidence(xs, ys, ea, eb, cell, cutoff)
    allx = np.concatenate([vcx, ecx])
    ally = np.concatenate([vcy, ecy])
    keys, _ = _grid_keys(allx, ally)
    vkeys, ekeys = keys[: vcx.size], keys[vcx.size :]

    vorder = np.argsort(vkeys, kind="stable")
    vks = vkeys[vorder]
    uk, starts, counts = np.unique(vks, return_index=True, return_counts=True)
    loc = np.searchsorted(uk, ekeys)
    ok = (loc < uk.size) & (uk[np.minimum(loc, uk.size - 1)] == ekeys)
    epos, vpos = _block_pairs(
        np.flatnonzero(ok), np.ones(int(ok.sum()), np.int64), starts[loc[ok]], counts[loc[ok]]
    )
    e_sel = eid[epos]
    v_sel = vorder[vpos]
    nonend = (v_sel != ea[e_sel]) & (v_sel != eb[e_sel])
    v_sel, e_sel = v_sel[nonend], e_sel[nonend]
    d = _point_seg_dist(xs[v_sel], ys[v_sel], xs[ea[e_sel]], ys[ea[e_sel]], xs[eb[e_sel]], ys[eb[e_sel]])
    keep = d <= cutoff
    v_sel, e_sel, d = v_sel[keep], e_sel[keep], d[keep]
    srt = np.lexsort((e_sel, v_sel))
    return v_sel[srt], e_sel[srt], d[srt]


def edge_pair_candidates(xs, ys, ea, eb, cutoff):
    """Non-adjacent edge pairs (e1 < e2) with crossing flag and f64 distance.

    Returns every pair whose segments cross in float64 or approach within
    ``cutoff``; distance is the segment-segment minimum (0 for crossings).
    """
    ne = ea.size
    if ne < 2:
        e = np.empty(0, np.int64)
        return e, e, np.empty(0, np.float64), np.empty(0, np.bool_)
    cell = max(0.5, cutoff * (1 + 1e-9))
    ccx, ccy, eid = _edge_cell_incidence(xs, ys, ea, eb, cell, cutoff / 2)
    keys, _ = _grid_keys(ccx, ccy)
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    _, starts, counts = np.unique(ks, return_index=True, return_counts=True)
    ii, jj = _within_pairs(starts, counts)
    p1 = eid[order[ii]]
    p2 = eid[order[jj]]
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    mask = lo != hi
    pair = np.unique(lo[mask] * np.int64(ne) + hi[mask])
    p1 = pair // ne
    p2 = pair % ne
    adj = (
        (ea[p1] == ea[p2]) | (ea[p1] == eb[p2]) | (eb[p1] == ea[p2]) | (eb[p1] == eb[p2])
    )
    p1, p2 = p1[~adj], p2[~adj]
    ax, ay = xs[ea[p1]], ys[ea[p1]]
    bx, by = xs[eb[p1]], ys[eb[p1]]
    cx_, cy_ = xs[ea[p2]], ys[ea[p2]]
    dx_, dy_ = xs[eb[p2]], ys[eb[p2]]
    d1 = (bx - ax) * (cy_ - ay) - (by - ay) * (cx_ - ax)
    d2 = (bx - ax) * (dy_ - ay) - (by - ay) * (dx_ - ax)
    d3 = (dx_ - cx_) * (ay - cy_) - (dy_ - cy_) * (ax - cx_)
    d4 = (dx_ - cx_) * (by - cy_) - (dy_ - cy_) * (bx - cx_)
    crossing = (d1 * d2 < 0) & (d3 * d4 < 0)
    dist = np.minimum(
        np.minimum(
            _point_seg_dist(cx_, cy_, ax, ay, bx, by),
            _point_seg_dist(dx_, dy_, ax, ay, bx, by),
        ),
        np.minimum(
            _point_seg_dist(ax, ay, cx_, cy_, dx_, dy_),
            _point_seg_dist(bx, by, cx_, cy_, dx_, dy_),
        ),
    )
    dist = np.where(crossing, 0.0, dist)
    keep = crossing | (dist <= cutoff)
    p1, p2, dist, crossing = p1[keep], p2[keep], dist[keep], crossing[keep]
    srt = np.lexsort((p2, p1))
    return p1[srt], p2[srt], dist[srt], crossing[srt]


def triangle_cycles(n, ea, eb):
    """Combinatorial 3-cycles (i < j < k) of the edge set."""
    if ea.size == 0:
        e = np.empty(0, np.int64)
        return e, e, e
    rows = np.concatenate([ea, eb])
    cols = np.concatenate([eb, ea])
    srt = np.lexsort((cols, rows))
    rows, cols = rows[srt], cols[srt]
    indptr = np.zeros(n + 1, np.int64)
    np.add.at(indptr, rows + 1, 1)
    indptr = np.cumsum(indptr)
    out_i, out_j, out_k = [], [], []
    for u, v in zip(ea, eb):
        u, v = (u, v) if u < v else (v, u)
        nu = cols[indptr[u] : indptr[u + 1]]
        nv = cols[indptr[v] : indptr[v + 1]]
        common = np.intersect1d(nu, nv, assume_unique=True)
        for w in common[common > v]:
            out_i.append(u)
            out_j.append(v)
            out_k.append(w)
    tri = np.array(sorted(zip(out_i, out_j, out_k)), dtype=np.int64).reshape(-1, 3)
    return tri[:, 0], tri[:, 1], tri[:, 2]
