from __future__ import annotations

import random

import pytest
from mpmath import mp, mpf, pi

from matchstick import fixtures
from matchstick.errors import DegenerateCenters, DegenerateSegment, NoIntersection
from matchstick.geometry import (
    Line,
    Point,
    SegmentRelation,
    circle_circle_intersect,
    distance,
    point_segment_distance,
    reflect,
    rotate,
    segment_relation,
)
from matchstick.precision import scalar_to_str, tol

TOL5 = tol(5)


def _pt(x, y):
    return Point(mpf(x), mpf(y))


def _rand_point(rng, span=4.0):
    return _pt(rng.uniform(-span, span), rng.uniform(-span, span))


class TestRotate:
    def test_center_is_fixed(self):
        c = _pt(0, 0)
        for ang in ("0.3", "1.7", "-2.2"):
            assert distance(rotate(c, c, mpf(ang)), c) == 0

    def test_quarter_turn(self):
        got = rotate(_pt(1, 0), _pt(0, 0), pi / 2)
        assert distance(got, _pt(0, 1)) < TOL5

    def test_fixture_rail_rotation_maps_A_to_C(self, g2_graph):
        # The rail apex from the figure: intersection of the A-F rail line
        # with the B-E axis; rotating A by the full ring angle lands on C.
        rm = g2_graph.meta["row_map"]
        a, f = g2_graph.vertices[rm["17"]], g2_graph.vertices[rm["36"]]
        b, e = g2_graph.vertices[rm["3"]], g2_graph.vertices[rm["37"]]
        d1, d2 = f - a, e - b
        t = (b - a).cross(d2) / d1.cross(d2)
        apex = Point(a.x + t * d1.x, a.y + t * d1.y)
        got = rotate(a, apex, 2 * pi / 169)
        assert distance(got, g2_graph.vertices[rm["52"]]) < mpf("1e-12")

    def test_inverse_composition_identity(self):
        rng = random.Random(1)
        for _ in range(120):
            p = _rand_point(rng)
            c = _rand_point(rng)
            ang = mpf(rng.uniform(-6, 6))
            back = rotate(rotate(p, c, ang), c, -ang)
            assert distance(back, p) < TOL5

    def test_nfold_composition_returns_point(self):
        rng = random.Random(2)
        for n in (3, 7, 12, 169):
            p = _rand_point(rng)
            c = _rand_point(rng)
            q = p
            for _ in range(n):
                q = rotate(q, c, 2 * pi / n)
            assert distance(q, p) < TOL5
            assert distance(rotate(p, c, 2 * pi / n), c) - distance(p, c) < TOL5


class TestReflect:
    def test_across_x_axis(self):
        axis = Line(_pt(0, 0), mpf(0))
        assert distance(reflect(_pt(0, 1), axis), _pt(0, -1)) < TOL5

    def test_point_on_axis_is_fixed(self):
        axis = Line.from_points(_pt(-1, -1), _pt(2, 2))
        p = _pt("0.5", "0.5")
        assert distance(reflect(p, axis), p) < TOL5

    def test_fixture_mirror_A_to_C(self, g2_graph):
        # A and C are published as mirror images about BE; the table itself
        # carries ~1e-14 rounding, which bounds the residual here.
        rm = g2_graph.meta["row_map"]
        axis = Line.from_points(g2_graph.vertices[rm["3"]], g2_graph.vertices[rm["37"]])
        got = reflect(g2_graph.vertices[rm["17"]], axis)
        assert distance(got, g2_graph.vertices[rm["52"]]) < mpf("1e-14")

    def test_involution(self):
        rng = random.Random(3)
        for _ in range(120):
            p = _rand_point(rng)
            a, b = _rand_point(rng), _rand_point(rng)
            if distance(a, b) < mpf("0.1"):
                continue
            axis = Line.from_points(a, b)
            assert distance(reflect(reflect(p, axis), axis), p) < TOL5
            mid = reflect(p, axis) + p
            mid = Point(mid.x / 2, mid.y / 2)
            assert abs(axis.signed_distance(mid)) < TOL5


class TestCircleCircleIntersect:
    def test_equilateral_sides(self):
        up = circle_circle_intersect(_pt(0, 0), _pt(1, 0), +1)
        down = circle_circle_intersect(_pt(0, 0), _pt(1, 0), -1)
        assert distance(up, _pt("0.5", mp.sqrt(3) / 2)) < TOL5
        assert distance(down, _pt("0.5", -mp.sqrt(3) / 2)) < TOL5

    def test_fixture_vertex_reconstruction(self, g2_graph):
        # P16 is a unit neighbor of both P2 and P17 in the figure table;
        # intersecting their unit circles on the correct side recovers it.
        rm = g2_graph.meta["row_map"]
        c1, c2 = g2_graph.vertices[rm["2"]], g2_graph.vertices[rm["17"]]
        target = g2_graph.vertices[rm["16"]]
        side = 1 if (c2 - c1).cross(target - c1) > 0 else -1
        got = circle_circle_intersect(c1, c2, side)
        assert distance(got, target) < mpf("1e-14")

    def test_distance_law_randomized(self):
        rng = random.Random(4)
        done = 0
        while done < 120:
            c1, c2 = _rand_point(rng, 2), _rand_point(rng, 2)
            d = distance(c1, c2)
            if d < mpf("0.05") or d > mpf("1.95"):
                continue
            for side in (1, -1):
                p = circle_circle_intersect(c1, c2, side)
                assert abs(distance(p, c1) - 1) < TOL5
                assert abs(distance(p, c2) - 1) < TOL5
            done += 1

    def test_degenerate_and_disjoint(self):
        with pytest.raises(DegenerateCenters):
            circle_circle_intersect(_pt(0, 0), _pt(0, 0), 1)
        with pytest.raises(NoIntersection):
            circle_circle_intersect(_pt(0, 0), _pt("2.5", 0), 1)


class TestSegmentRelation:
    def test_classes(self):
        rel = segment_relation
        assert rel(_pt(0, 0), _pt(1, 0), _pt(0, 1), _pt(1, 1)) is SegmentRelation.DISJOINT
        assert (
            rel(_pt(0, 0), _pt(1, 1), _pt(0, 1), _pt(1, 0)) is SegmentRelation.PROPER_CROSSING
        )
        assert (
            rel(_pt(0, 0), _pt(2, 0), _pt(1, 0), _pt(1, 1))
            is SegmentRelation.ENDPOINT_ON_INTERIOR
        )
        assert (
            rel(_pt(0, 0), _pt(1, 0), _pt(1, 0), _pt(2, 1)) is SegmentRelation.SHARED_ENDPOINT
        )
        assert (
            rel(_pt(0, 0), _pt(2, 0), _pt(1, 0), _pt(3, 0)) is SegmentRelation.COLLINEAR_OVERLAP
        )
        assert rel(_pt(0, 0), _pt(1, 0), _pt(2, 0), _pt(3, 0)) is SegmentRelation.DISJOINT

    def test_degenerate(self):
        with pytest.raises(DegenerateSegment):
            segment_relation(_pt(0, 0), _pt(0, 0), _pt(0, 1), _pt(1, 1))

    def test_symmetry(self):
        rng = random.Random(5)
        cases = 0
        while cases < 150:
            pts = [_rand_point(rng, 2) for _ in range(4)]
            a, b, c, d = pts
            if distance(a, b) < mpf("0.01") or distance(c, d) < mpf("0.01"):
                continue
            base = segment_relation(a, b, c, d)
            assert segment_relation(c, d, a, b) is base
            assert segment_relation(b, a, c, d) is base
            assert segment_relation(a, b, d, c) is base
            cases += 1


class TestPointSegmentDistance:
    def test_basics(self):
        assert point_segment_distance(_pt(0, 1), _pt(-1, 0), _pt(1, 0)) == 1
        assert point_segment_distance(_pt(-1, 0), _pt(-1, 0), _pt(1, 0)) == 0
        # beyond the endpoint the distance is to the endpoint itself
        assert abs(point_segment_distance(_pt(2, 1), _pt(-1, 0), _pt(1, 0)) - mp.sqrt(2)) < TOL5

    def test_degenerate(self):
        with pytest.raises(DegenerateSegment):
            point_segment_distance(_pt(0, 0), _pt(1, 1), _pt(1, 1))

    def test_vertex_on_edge_in_harborth_fixture(self, g1_graph):
        rm = g1_graph.meta["row_map"]
        d = point_segment_distance(
            g1_graph.vertices[rm["42"]],
            g1_graph.vertices[rm["58"]],
            g1_graph.vertices[rm["61"]],
        )
        assert d < mpf("1e-12")


class TestScalarRoundTrip:
    def test_fixture_coordinates_lossless(self):
        for name in fixtures.FIXTURE_NAMES:
            raw = fixtures.load_raw(name)
            for _, xs, ys in raw.coordinates:
                for s in (xs, ys):
                    v = mpf(s)
                    assert mpf(scalar_to_str(v)) == v

    def test_twenty_place_strings_round_trip_verbatim(self):
        # Nonzero 20-place decimals are the unique shortest representation.
        samples = [
            "0.86604121676819312281",
            "8.94681674415535610478",
            "1.92984178354140767375",
        ]
        for s in samples:
            assert scalar_to_str(mpf(s)) == s
