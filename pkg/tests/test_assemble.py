from __future__ import annotations

import numpy as np
import pytest
from mpmath import mpf

import matchstick as ms
from matchstick import fixtures
from matchstick.assemble import _rigid_fit, rail_directions
from matchstick.errors import MergeFailure, SeamMismatch, UnexpectedCollision
from matchstick.geometry import Point, distance, rotate
from matchstick.graph import UnitGraph, degree_histogram
from matchstick.linkage import RingSpec


class TestMirrorClose:
    def test_g2_counts(self, g2_base):
        assert len(g2_base.vertices) == 66
        assert len(g2_base.edges) == 114
        assert len(g2_base.designated) == 38
        assert set(g2_base.labels) == set("ABCDEFGH")

    def test_g1_counts(self, g1_base):
        assert len(g1_base.designated) == 38

    def test_no_axis_raises(self, g2_template, g2_anchor):
        import dataclasses

        broken = dataclasses.replace(g2_template, axis=())
        with pytest.raises(SeamMismatch):
            ms.mirror_close(broken, g2_anchor)


class TestRingAssemble:
    def test_g2_ring_counts(self, g2_ring):
        assert len(g2_ring.vertices) == 169 * 57
        assert len(g2_ring.edges) == 2 * len(g2_ring.vertices)
        assert len(g2_ring.designated) == 169 * 38
        assert degree_histogram(g2_ring) == {4: len(g2_ring.vertices)}

    def test_g1_ring_counts(self, g1_ring):
        assert len(g1_ring.designated) == 100 * 38 == 3800
        assert degree_histogram(g1_ring) == {4: len(g1_ring.vertices)}

    def test_designated_sides_unit(self, g2_ring):
        tolerance = mpf(10) ** (10 - 60)
        v = g2_ring.vertices
        for tri in g2_ring.designated[:200]:
            for a, b in ((0, 1), (0, 2), (1, 2)):
                assert abs(distance(v[tri[a]], v[tri[b]]) - 1) < tolerance

    def test_rotational_symmetry(self, g2_ring):
        spec = RingSpec(169)
        center = Point(mpf(g2_ring.meta["apex_x"]), mpf(0))
        disp = ms.ring_rotation_displacement(g2_ring, center, spec.omega)
        assert disp < mpf(10) ** (8 - 60)

    def test_arc_equals_two_copy_chain(self, g2_base):
        spec = RingSpec(169)
        arc = ms.ring_assemble(g2_base, spec, n_copies=2)
        chain = ms.chain_assemble([(g2_base, "direct"), (g2_base, "direct")])
        assert len(arc.vertices) == len(chain.vertices) == 2 * 66 - 9
        assert len(arc.edges) == len(chain.edges)
        assert len(arc.designated) == len(chain.designated) == 76
        # same point sets up to numbering
        got = sorted((float(p.x), float(p.y)) for p in chain.vertices)
        want = sorted((float(p.x), float(p.y)) for p in arc.vertices)
        for a, b in zip(got, want):
            assert abs(a[0] - b[0]) < 1e-12 and abs(a[1] - b[1]) < 1e-12

    def test_wrong_apex_fails_merge(self, g2_base):
        with pytest.raises(MergeFailure):
            ms.ring_assemble(g2_base, RingSpec(169), apex_x=mpf("105.3"))

    def test_unexpected_collision_detected(self, g2_base):
        # Plant a vertex exactly where a rotated copy puts a non-seam vertex.
        apex = Point(mpf(g2_base.meta["apex_x"]), mpf(0))
        spec = RingSpec(169)
        ghost = rotate(g2_base.vertices[20], apex, spec.omega)
        nv = len(g2_base.vertices)
        g = UnitGraph(
            vertices=list(g2_base.vertices) + [ghost],
            edges=list(g2_base.edges) + [(20, nv)],
            designated=g2_base.designated,
            labels=g2_base.labels,
            meta=g2_base.public_meta(),
        )
        with pytest.raises(UnexpectedCollision):
            ms.ring_assemble(g, spec, n_copies=3)


class TestAdapter:
    def test_rails_parallel(self, g1_graph):
        from mpmath import pi

        g4 = ms.make_adapter(g1_graph)
        th1, th2 = rail_directions(g4)
        diff = abs(th1 - th2)
        assert min(diff, pi - diff) < mpf("1e-12")

    def test_matches_published_table(self, g1_graph):
        g4 = ms.make_adapter(g1_graph)
        ref = fixtures.load("g4")
        assert len(g4.vertices) == len(ref.vertices)
        # nearest-point bijection within 1e-12, edge sets carried over
        mapping = {}
        for i, p in enumerate(g4.vertices):
            best = min(range(len(ref.vertices)), key=lambda j: distance(p, ref.vertices[j]))
            assert distance(p, ref.vertices[best]) < mpf("1e-12")
            mapping[i] = best
        assert sorted(mapping.values()) == list(range(len(ref.vertices)))
        got_edges = {tuple(sorted((mapping[a], mapping[b]))) for a, b in g4.edges}
        assert got_edges == set(ref.edges)
        assert len(g4.designated) == 38

    def test_reflection_involution(self, g1_graph):
        g4 = ms.make_adapter(g1_graph)
        g5 = ms.axis_reflect(g4)
        back = ms.axis_reflect(g5)
        for p, q in zip(back.vertices, g4.vertices):
            assert distance(p, q) < mpf(10) ** (5 - 60)
        assert back.labels == g4.labels


class TestChains:
    def test_single_piece_identity(self, g1_graph):
        assert ms.chain_assemble([(g1_graph, "direct")]) is g1_graph

    def test_adapter_chain(self, g1_graph):
        g4 = ms.make_adapter(g1_graph)
        chain = ms.chain_assemble(
            [(g1_graph, "direct"), (g4, "direct"), (g4, "flipped")]
        )
        assert len(chain.vertices) == 3 * 66 - 2 * 9
        assert len(chain.designated) == 3 * 38
        hist = degree_histogram(chain)
        assert hist[4] == len(chain.vertices) - 18  # the two open rails stay degree 2
        rep = ms.verify(chain, ms.ToleranceProfile.fixture())
        assert not rep.verdicts["planar"]

    def test_seam_mismatch_detected(self, g1_graph, g2_base):
        with pytest.raises(SeamMismatch):
            ms.chain_assemble([(g1_graph, "direct"), (g2_base, "direct")])

    def test_rigid_fit_exact(self):
        rng = np.random.default_rng(3)
        src = [Point(mpf(float(x)), mpf(float(y))) for x, y in rng.uniform(-2, 2, (6, 2))]
        c = Point(mpf("0.3"), mpf("-1"))
        dst = [rotate(p, c, mpf("0.77")) + Point(mpf(2), mpf(5)) for p in src]
        transform, theta, worst = _rigid_fit(src, dst)
        assert worst < mpf(10) ** (5 - 60)
