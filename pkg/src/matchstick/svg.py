"""SVG 1.1 export: one line per edge, one marker per vertex, optional
magnifier insets around the smallest separations."""

from __future__ import annotations

import numpy as np

from .graph import UnitGraph


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


def export_svg(
    g: UnitGraph,
    scale: float = 60.0,
    stroke: float = 0.02,
    insets: int = 0,
    inset_radius: float = 0.002,
) -> str:
    """Render the graph as an SVG document string.

    ``insets`` > 0 adds that many magnified boxes centered on the smallest
    vertex separations (the spots where certification is tightest).
    """
    xs, ys = g.float_xy()
    if xs.size == 0:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="1" height="1"/>'
    pad = 0.6
    x0, x1 = xs.min() - pad, xs.max() + pad
    y0, y1 = ys.min() - pad, ys.max() + pad
    w, h = (x1 - x0) * scale, (y1 - y0) * scale

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        return (y1 - y) * scale  # flip: SVG y grows downward

    lines = []
    for a, b in g.edges:
        lines.append(
            f'<line x1="{_fmt(sx(xs[a]))}" y1="{_fmt(sy(ys[a]))}" '
            f'x2="{_fmt(sx(xs[b]))}" y2="{_fmt(sy(ys[b]))}"/>'
        )
    markers = [
        f'<circle cx="{_fmt(sx(xs[i]))}" cy="{_fmt(sy(ys[i]))}" r="{_fmt(stroke * scale)}"/>'
        for i in range(xs.size)
    ]
    label_texts = [
        f'<text x="{_fmt(sx(xs[i]) + 4)}" y="{_fmt(sy(ys[i]) - 4)}">{name}</text>'
        for name, i in sorted(g.labels.items())
    ]

    inset_elems = []
    inset_h = 0.0
    if insets > 0:
        spots = _tightest_spots(g, insets)
        box = min(w, h) / max(len(spots), 1) * 0.8
        box = min(box, 220.0)
        mag_scale = box / (2 * inset_radius)
        for idx, (cx, cy) in enumerate(spots):
            ox = idx * (box + 12.0)
            oy = h + 12.0
            clip_id = f"inset{idx}"
            sub = [
                f'<clipPath id="{clip_id}"><rect x="{_fmt(ox)}" y="{_fmt(oy)}" '
                f'width="{_fmt(box)}" height="{_fmt(box)}"/></clipPath>',
                f'<rect x="{_fmt(ox)}" y="{_fmt(oy)}" width="{_fmt(box)}" '
                f'height="{_fmt(box)}" fill="none" stroke="black"/>',
                f'<g clip-path="url(#{clip_id})" stroke="black" '
                f'stroke-width="{_fmt(stroke * mag_scale / 50)}">',
            ]
            r = inset_radius * 3
            for a, b in g.edges:
                if (
                    max(xs[a], xs[b]) < cx - r
                    or min(xs[a], xs[b]) > cx + r
                    or max(ys[a], ys[b]) < cy - r
                    or min(ys[a], ys[b]) > cy + r
                ):
                    continue
                sub.append(
                    '<line x1="{}" y1="{}" x2="{}" y2="{}"/>'.format(
                        _fmt(ox + box / 2 + (xs[a] - cx) * mag_scale),
                        _fmt(oy + box / 2 - (ys[a] - cy) * mag_scale),
                        _fmt(ox + box / 2 + (xs[b] - cx) * mag_scale),
                        _fmt(oy + box / 2 - (ys[b] - cy) * mag_scale),
                    )
                )
            sub.append("</g>")
            inset_elems.append("\n".join(sub))
        if spots:
            inset_h = box + 24.0

    doc = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" '
        f'height="{_fmt(h + inset_h)}" viewBox="0 0 {_fmt(w)} {_fmt(h + inset_h)}">',
        f'<g stroke="black" stroke-width="{_fmt(stroke * scale)}" stroke-linecap="round">',
        *lines,
        "</g>",
        '<g fill="black">',
        *markers,
        "</g>",
        '<g font-size="12" fill="crimson">',
        *label_texts,
        "</g>",
        *inset_elems,
        "</svg>",
    ]
    return "\n".join(doc) + "\n"


def _tightest_spots(g: UnitGraph, count: int):
    """Centers of the ``count`` smallest vertex-vertex separations."""
    from . import kernels

    xs, ys = g.float_xy()
    cutoff = 1e-3
    ia = ib = None
    while True:
        ia, ib = kernels.near_vertex_pairs(xs, ys, cutoff)
        if ia.size >= count or cutoff > 4.0:
            break
        cutoff *= 8
    if ia.size == 0:
        return []
    d = np.sqrt((xs[ia] - xs[ib]) ** 2 + (ys[ia] - ys[ib]) ** 2)
    order = np.argsort(d, kind="stable")[:count]
    return [((xs[ia[k]] + xs[ib[k]]) / 2, (ys[ia[k]] + ys[ib[k]]) / 2) for k in order]
