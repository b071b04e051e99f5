"""Numba-compiled scan kernels, semantically identical to the reference ones.

Every function returns the same canonically sorted arrays as
``kernels.reference``; distances use the same float64 expressions so the two
backends agree bit for bit.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _cells(xs, ys, cell):
    n = xs.size
    cx = np.empty(n, np.int64)
    cy = np.empty(n, np.int64)
    for i in range(n):
        cx[i] = np.int64(np.floor(xs[i] / cell))
        cy[i] = np.int64(np.floor(ys[i] / cell))
    return cx, cy


@njit(cache=True)
def _keys(cx, cy):
    ny0 = cy.min() - 2
    stride = cy.max() - ny0 + 4
    nx0 = cx.min()
    out = np.empty(cx.size, np.int64)
    for i in range(cx.size):
        out[i] = (cx[i] - nx0 + 2) * stride + (cy[i] - ny0)
    return out, stride


@njit(cache=True)
def _range_of(ks, key):
    lo = np.searchsorted(ks, key, side="left")
    hi = np.searchsorted(ks, key, side="right")
    return lo, hi


@njit(cache=True)
def _near_vertex_pairs(xs, ys, cutoff):
    cell = 0.5 if cutoff * (1 + 1e-9) < 0.5 else cutoff * (1 + 1e-9)
    cx, cy = _cells(xs, ys, cell)
    keys, stride = _keys(cx, cy)
    order = np.argsort(keys, kind="mergesort")
    ks = keys[order]
    n = xs.size
    cap = 64
    out_a = np.empty(cap, np.int64)
    out_b = np.empty(cap, np.int64)
    cnt = 0
    c2 = cutoff * cutoff
    offs = np.array([0, 1, stride - 1, stride, stride + 1], np.int64)
    for pos in range(n):
        i = order[pos]
        k = ks[pos]
        for oi in range(5):
            off = offs[oi]
            lo, hi = _range_of(ks, k + off)
            start = pos + 1 if off == 0 else lo
            for q in range(start, hi):
                j = order[q]
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                if dx * dx + dy * dy <= c2:
                    if cnt == cap:
                        cap *= 2
                        na = np.empty(cap, np.int64)
                        nb = np.empty(cap, np.int64)
                        na[:cnt] = out_a[:cnt]
                        nb[:cnt] = out_b[:cnt]
                        out_a, out_b = na, nb
                    if i < j:
                        out_a[cnt] = i
                        out_b[cnt] = j
                    else:
                        out_a[cnt] = j
                        out_b[cnt] = i
                    cnt += 1
    return out_a[:cnt], out_b[:cnt]


def near_vertex_pairs(xs, ys, cutoff):
    if xs.size < 2:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    a, b = _near_vertex_pairs(xs, ys, float(cutoff))
    srt = np.lexsort((b, a))
    return a[srt], b[srt]


@njit(cache=True)
def _pseg(px, py, ax, ay, bx, by):
    abx = bx - ax
    aby = by - ay
    den = abx * abx + aby * aby
    t = ((px - ax) * abx + (py - ay) * aby) / den
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    qx = ax + t * abx
    qy = ay + t * aby
    return np.sqrt((px - qx) ** 2 + (py - qy) ** 2)


@njit(cache=True)
def _edge_cells(xs, ys, ea, eb, cell, inflate):
    ne = ea.size
    lox = np.empty(ne, np.int64)
    hix = np.empty(ne, np.int64)
    loy = np.empty(ne, np.int64)
    hiy = np.empty(ne, np.int64)
    total = 0
    for e in range(ne):
        ax, ay = xs[ea[e]], ys[ea[e]]
        bx, by = xs[eb[e]], ys[eb[e]]
        x0 = ax if ax < bx else bx
        x1 = bx if ax < bx else ax
        y0 = ay if ay < by else by
        y1 = by if ay < by else ay
        lox[e] = np.int64(np.floor((x0 - inflate) / cell))
        hix[e] = np.int64(np.floor((x1 + inflate) / cell))
        loy[e] = np.int64(np.floor((y0 - inflate) / cell))
        hiy[e] = np.int64(np.floor((y1 + inflate) / cell))
        total += (hix[e] - lox[e] + 1) * (hiy[e] - loy[e] + 1)
    ccx = np.empty(total, np.int64)
    ccy = np.empty(total, np.int64)
    eid = np.empty(total, np.int64)
    k = 0
    for e in range(ne):
        for gx in range(lox[e], hix[e] + 1):
            for gy in range(loy[e], hiy[e] + 1):
                ccx[k] = gx
                ccy[k] = gy
                eid[k] = e
                k += 1
    return ccx, ccy, eid


@njit(cache=True)
def _near_vertex_edge(xs, ys, ea, eb, cutoff):
    cell = 0.5 if cutoff * (1 + 1e-9) < 0.5 else cutoff * (1 + 1e-9)
    vcx, vcy = _cells(xs, ys, cell)
    ecx, ecy, eid = _edge_cells(xs, ys, ea, eb, cell, cutoff)
    allx = np.concatenate((vcx, ecx))
    ally = np.concatenate((vcy, ecy))
    keys, _ = _keys(allx, ally)
    nv = vcx.size
    vkeys = keys[:nv]
    ekeys = keys[nv:]
    vorder = np.argsort(vkeys, kind="mergesort")
    vks = vkeys[vorder]
    cap = 64
    out_v = np.empty(cap, np.int64)
    out_e = np.empty(cap, np.int64)
    out_d = np.empty(cap, np.float64)
    cnt = 0
    for t in range(ekeys.size):
        e = eid[t]
        lo, hi = _range_of(vks, ekeys[t])
        for q in range(lo, hi):
            v = vorder[q]
            if v == ea[e] or v == eb[e]:
                continue
            d = _pseg(xs[v], ys[v], xs[ea[e]], ys[ea[e]], xs[eb[e]], ys[eb[e]])
            if d <= cutoff:
                if cnt == cap:
                    cap *= 2
                    a = np.empty(cap, np.int64)
                    b = np.empty(cap, np.int64)
                    c = np.empty(cap, np.float64)
                    a[:cnt] = out_v[:cnt]
                    b[:cnt] = out_e[:cnt]
                    c[:cnt] = out_d[:cnt]
                    out_v, out_e, out_d = a, b, c
                out_v[cnt] = v
                out_e[cnt] = e
                out_d[cnt] = d
                cnt += 1
    return out_v[:cnt], out_e[:cnt], out_d[:cnt]


def near_vertex_edge_pairs(xs, ys, ea, eb, cutoff):
    if ea.size == 0 or xs.size == 0:
        e = np.empty(0, np.int64)
        return e, e, np.empty(0, np.float64)
    v, e, d = _near_vertex_edge(xs, ys, ea, eb, float(cutoff))
    srt = np.lexsort((e, v))
    return v[srt], e[srt], d[srt]


@njit(cache=True)
def _edge_pair_scan(xs, ys, ea, eb, cutoff):
    ne = ea.size
    cell = 0.5 if cutoff * (1 + 1e-9) < 0.5 else cutoff * (1 + 1e-9)
    ccx, ccy, eid = _edge_cells(xs, ys, ea, eb, cell, cutoff / 2)
    keys, _ = _keys(ccx, ccy)
    order = np.argsort(keys, kind="mergesort")
    ks = keys[order]
    m = ks.size
    cap = 64
    pairs = np.empty(cap, np.int64)
    cnt = 0
    start = 0
    while start < m:
        stop = start
        while stop < m and ks[stop] == ks[start]:
            stop += 1
        for x in range(start, stop):
            for y in range(x + 1, stop):
                e1 = eid[order[x]]
                e2 = eid[order[y]]
                if e1 == e2:
                    continue
                lo = e1 if e1 < e2 else e2
                hi = e2 if e1 < e2 else e1
                if cnt == cap:
                    cap *= 2
                    np_ = np.empty(cap, np.int64)
                    np_[:cnt] = pairs[:cnt]
                    pairs = np_
                pairs[cnt] = lo * ne + hi
                cnt += 1
        start = stop
    upairs = np.unique(pairs[:cnt])
    cap = 64
    o1 = np.empty(cap, np.int64)
    o2 = np.empty(cap, np.int64)
    od = np.empty(cap, np.float64)
    oc = np.empty(cap, np.bool_)
    k = 0
    for t in range(upairs.size):
        p1 = upairs[t] // ne
        p2 = upairs[t] % ne
        if ea[p1] == ea[p2] or ea[p1] == eb[p2] or eb[p1] == ea[p2] or eb[p1] == eb[p2]:
            continue
        ax, ay = xs[ea[p1]], ys[ea[p1]]
        bx, by = xs[eb[p1]], ys[eb[p1]]
        cx_, cy_ = xs[ea[p2]], ys[ea[p2]]
        dx_, dy_ = xs[eb[p2]], ys[eb[p2]]
        d1 = (bx - ax) * (cy_ - ay) - (by - ay) * (cx_ - ax)
        d2 = (bx - ax) * (dy_ - ay) - (by - ay) * (dx_ - ax)
        d3 = (dx_ - cx_) * (ay - cy_) - (dy_ - cy_) * (ax - cx_)
        d4 = (dx_ - cx_) * (by - cy_) - (dy_ - cy_) * (bx - cx_)
        crossing = (d1 * d2 < 0) and (d3 * d4 < 0)
        if crossing:
            dist = 0.0
        else:
            dist = min(
                min(_pseg(cx_, cy_, ax, ay, bx, by), _pseg(dx_, dy_, ax, ay, bx, by)),
                min(_pseg(ax, ay, cx_, cy_, dx_, dy_), _pseg(bx, by, cx_, cy_, dx_, dy_)),
            )
        if crossing or dist <= cutoff:
            if k == cap:
                cap *= 2
                a = np.empty(cap, np.int64)
                b = np.empty(cap, np.int64)
                c = np.empty(cap, np.float64)
                d_ = np.empty(cap, np.bool_)
                a[:k] = o1[:k]
                b[:k] = o2[:k]
                c[:k] = od[:k]
                d_[:k] = oc[:k]
                o1, o2, od, oc = a, b, c, d_
            o1[k] = p1
            o2[k] = p2
            od[k] = dist
            oc[k] = crossing
            k += 1
    return o1[:k], o2[:k], od[:k], oc[:k]


def edge_pair_candidates(xs, ys, ea, eb, cutoff):
    if ea.size < 2:
        e = np.empty(0, np.int64)
        return e, e, np.empty(0, np.float64), np.empty(0, np.bool_)
    p1, p2, d, c = _edge_pair_scan(xs, ys, ea, eb, float(cutoff))
    srt = np.lexsort((p2, p1))
    return p1[srt], p2[srt], d[srt], c[srt]


@njit(cache=True)
def _triangles(n, ea, eb):
    ne = ea.size
    deg = np.zeros(n + 1, np.int64)
    for e in range(ne):
        deg[ea[e] + 1] += 1
        deg[eb[e] + 1] += 1
    indptr = np.cumsum(deg)
    fill = indptr[:-1].copy()
    cols = np.empty(2 * ne, np.int64)
    for e in range(ne):
        cols[fill[ea[e]]] = eb[e]
        fill[ea[e]] += 1
        cols[fill[eb[e]]] = ea[e]
        fill[eb[e]] += 1
    for v in range(n):
        cols[indptr[v] : indptr[v + 1]] = np.sort(cols[indptr[v] : indptr[v + 1]])
    cap = 64
    oi = np.empty(cap, np.int64)
    oj = np.empty(cap, np.int64)
    ok = np.empty(cap, np.int64)
    cnt = 0
    for e in range(ne):
        u, v = ea[e], eb[e]
        if u > v:
            u, v = v, u
        a = indptr[u]
        b = indptr[v]
        while a < indptr[u + 1] and b < indptr[v + 1]:
            cu = cols[a]
            cv = cols[b]
            if cu == cv:
                if cu > v:
                    if cnt == cap:
                        cap *= 2
                        na = np.empty(cap, np.int64)
                        nb = np.empty(cap, np.int64)
                        nc = np.empty(cap, np.int64)
                        na[:cnt] = oi[:cnt]
                        nb[:cnt] = oj[:cnt]
                        nc[:cnt] = ok[:cnt]
                        oi, oj, ok = na, nb, nc
                    oi[cnt] = u
                    oj[cnt] = v
                    ok[cnt] = cu
                    cnt += 1
                a += 1
                b += 1
            elif cu < cv:
                a += 1
            else:
                b += 1
    return oi[:cnt], oj[:cnt], ok[:cnt]


def triangle_cycles(n, ea, eb):
    if ea.size == 0:
        e = np.empty(0, np.int64)
        return e, e, e
    i, j, k = _triangles(n, ea, eb)
    srt = np.lexsort((k, j, i))
    return i[srt], j[srt], k[srt]
