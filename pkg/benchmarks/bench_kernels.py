#!/usr/bin/env python3
"""Benchmark the float64 scan kernels: numba fast path vs pure-numpy fallback.

Builds the full certified ring (9633 vertices, 19266 edges), times each
kernel on it under both backends, and reports an end-to-end verification
timing with each backend patched in.  Run:

    python benchmarks/bench_kernels.py [--n 169] [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import time

import matchstick as ms
from matchstick import fixtures, kernels
from matchstick.kernels import reference
from matchstick.verify import ToleranceProfile, verify

try:
    from matchstick.kernels import accel
except ImportError:
    accel = None

KERNELS = (
    "near_vertex_pairs",
    "near_vertex_edge_pairs",
    "edge_pair_candidates",
    "triangle_cycles",
)


def build_ring(n: int):
    template = ms.build_template(fixtures.load("g2"))
    anchor = ms.solve(template, ms.RingSpec(template.anchor_n))
    result = ms.continue_in_n(template, anchor, n) if n != template.anchor_n else anchor
    base = ms.mirror_close(template, result)
    return ms.ring_assemble(base, ms.RingSpec(n))


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=169)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"building ring at n={args.n} ...")
    ring = build_ring(args.n)
    xs, ys = ring.float_xy()
    ea, eb = ring.edge_arrays()
    print(f"ring: {xs.size} vertices, {ea.size} edges\n")

    impls = [("numpy", reference)] + ([("numba", accel)] if accel else [])
    calls = {
        "near_vertex_pairs": lambda impl: impl.near_vertex_pairs(xs, ys, 1e-3),
        "near_vertex_edge_pairs": lambda impl: impl.near_vertex_edge_pairs(xs, ys, ea, eb, 1e-3),
        "edge_pair_candidates": lambda impl: impl.edge_pair_candidates(xs, ys, ea, eb, 1e-3),
        "triangle_cycles": lambda impl: impl.triangle_cycles(xs.size, ea, eb),
    }

    if accel:
        for name in KERNELS:
            calls[name](accel)  # compile outside the timed region

    header = f"{'kernel':>24}  " + "  ".join(f"{name:>10}" for name, _ in impls)
    if len(impls) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for kname in KERNELS:
        times = [time_call(lambda i=impl: calls[kname](i), repeat=args.repeat) for _, impl in impls]
        row = f"{kname:>24}  " + "  ".join(f"{t * 1e3:9.1f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)

    print("\nend-to-end verify (includes full-precision confirmations):")
    saved = {name: getattr(kernels, name) for name in KERNELS}
    reports = {}
    try:
        for bname, impl in impls:
            for name in KERNELS:
                setattr(kernels, name, getattr(impl, name))
            fresh = ms.UnitGraph(
                vertices=ring.vertices,
                edges=ring.edges,
                designated=ring.designated,
                meta=ring.public_meta(),
            )
            t0 = time.perf_counter()
            report = verify(fresh, ToleranceProfile.solved())
            dt = time.perf_counter() - t0
            reports[bname] = json.dumps(report.to_dict(), sort_keys=True)
            print(f"{bname:>24}  {dt:9.2f}s   verdicts {report.verdicts}")
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)
    if len(reports) == 2:
        same = reports["numpy"] == reports["numba"]
        print(f"\nreports byte-identical across backends: {same}")
        if not same:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
