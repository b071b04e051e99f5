from __future__ import annotations

import itertools

import numpy as np
import pytest

from matchstick.kernels import reference

try:
    from matchstick.kernels import accel

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKENDS = [reference] + ([accel] if HAVE_NUMBA else [])


def _random_scene(seed, n=60, ne=80, span=6.0):
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-span, span, n)
    ys = rng.uniform(-span, span, n)
    pairs = rng.choice(n, size=(3 * ne, 2))
    pairs = pairs[pairs[:, 0] != pairs[:, 1]][:ne]
    ea = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    eb = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    keep = sorted(set(zip(ea.tolist(), eb.tolist())))
    ea = np.array([p[0] for p in keep], np.int64)
    eb = np.array([p[1] for p in keep], np.int64)
    return xs, ys, ea, eb


def _seg_dist(p, a, b):
    ab = b - a
    t = np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0)
    return float(np.hypot(*(p - (a + t * ab))))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
class TestAgainstBruteForce:
    def test_near_vertex_pairs(self, impl):
        for seed in range(6):
            xs, ys, _, _ = _random_scene(seed)
            for cutoff in (0.05, 0.4, 1.3):
                ia, ib = impl.near_vertex_pairs(xs, ys, cutoff)
                got = set(zip(ia.tolist(), ib.tolist()))
                want = {
                    (i, j)
                    for i, j in itertools.combinations(range(xs.size), 2)
                    if np.hypot(xs[i] - xs[j], ys[i] - ys[j]) <= cutoff
                }
                assert got == want

    def test_near_vertex_edge_pairs(self, impl):
        for seed in range(6):
            xs, ys, ea, eb = _random_scene(seed)
            cutoff = 0.3
            vv, ee, dd = impl.near_vertex_edge_pairs(xs, ys, ea, eb, cutoff)
            got = set(zip(vv.tolist(), ee.tolist()))
            pts = np.array([xs, ys]).T
            want = set()
            for v in range(xs.size):
                for e in range(ea.size):
                    if v in (ea[e], eb[e]):
                        continue
                    if _seg_dist(pts[v], pts[ea[e]], pts[eb[e]]) <= cutoff:
                        want.add((v, e))
            assert got == want

    def test_edge_pair_candidates(self, impl):
        for seed in range(6):
            xs, ys, ea, eb = _random_scene(seed, n=30, ne=40)
            cutoff = 0.2
            p1, p2, dist, crossing = impl.edge_pair_candidates(xs, ys, ea, eb, cutoff)
            got = dict(zip(zip(p1.tolist(), p2.tolist()), crossing.tolist()))
            pts = np.array([xs, ys]).T

            def cross2(o, a, b):
                return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

            want = {}
            for e1, e2 in itertools.combinations(range(ea.size), 2):
                a, b, c, d = ea[e1], eb[e1], ea[e2], eb[e2]
                if len({a, b, c, d}) < 4:
                    continue
                d1 = cross2(pts[a], pts[b], pts[c])
                d2 = cross2(pts[a], pts[b], pts[d])
                d3 = cross2(pts[c], pts[d], pts[a])
                d4 = cross2(pts[c], pts[d], pts[b])
                crossing_bf = d1 * d2 < 0 and d3 * d4 < 0
                sep = 0.0 if crossing_bf else min(
                    _seg_dist(pts[c], pts[a], pts[b]),
                    _seg_dist(pts[d], pts[a], pts[b]),
                    _seg_dist(pts[a], pts[c], pts[d]),
                    _seg_dist(pts[b], pts[c], pts[d]),
                )
                if crossing_bf or sep <= cutoff:
                    want[(e1, e2)] = crossing_bf
            assert got == want

    def test_triangle_cycles(self, impl):
        for seed in range(6):
            xs, ys, ea, eb = _random_scene(seed, n=25, ne=60)
            ti, tj, tk = impl.triangle_cycles(xs.size, ea, eb)
            got = set(zip(ti.tolist(), tj.tolist(), tk.tolist()))
            eset = set(zip(ea.tolist(), eb.tolist()))

            def edge(i, j):
                return (min(i, j), max(i, j)) in eset

            want = {
                (i, j, k)
                for i, j, k in itertools.combinations(range(xs.size), 3)
                if edge(i, j) and edge(i, k) and edge(j, k)
            }
            assert got == want


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")
class TestBackendsAgree:
    def test_identical_outputs(self):
        for seed in range(8):
            xs, ys, ea, eb = _random_scene(seed, n=80, ne=120)
            for cutoff in (0.1, 0.7):
                a1 = reference.near_vertex_pairs(xs, ys, cutoff)
                a2 = accel.near_vertex_pairs(xs, ys, cutoff)
                for u, v in zip(a1, a2):
                    assert np.array_equal(u, v)
                b1 = reference.near_vertex_edge_pairs(xs, ys, ea, eb, cutoff)
                b2 = accel.near_vertex_edge_pairs(xs, ys, ea, eb, cutoff)
                for u, v in zip(b1, b2):
                    assert np.array_equal(u, v)
                c1 = reference.edge_pair_candidates(xs, ys, ea, eb, cutoff)
                c2 = accel.edge_pair_candidates(xs, ys, ea, eb, cutoff)
                for u, v in zip(c1, c2):
                    assert np.array_equal(u, v)
            t1 = reference.triangle_cycles(xs.size, ea, eb)
            t2 = accel.triangle_cycles(xs.size, ea, eb)
            for u, v in zip(t1, t2):
                assert np.array_equal(u, v)
