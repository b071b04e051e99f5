from __future__ import annotations

import pytest
from mpmath import mpf, sqrt

from matchstick import fixtures
from matchstick.errors import MergeAmbiguity
from matchstick.geometry import Point, distance
from matchstick.graph import (
    RawFixture,
    UnitGraph,
    degree_histogram,
    ingest_fixture,
    unit_three_cycles,
)
from matchstick.graphio import dumps_graph, graph_from_dict
import json


def _triangle_graph():
    h = sqrt(3) / 2
    return UnitGraph(
        vertices=(Point(0, 0), Point(1, 0), Point(mpf("0.5"), h)),
        edges=((0, 1), (0, 2), (1, 2)),
        designated=((0, 1, 2),),
    )


class TestIngest:
    def test_g2_merges_duplicate_axis_rows(self, g2_graph):
        assert len(g2_graph.vertices) == 66 < 72
        rm = g2_graph.meta["row_map"]
        for dup, keep in (("40", "4"), ("42", "6"), ("44", "8"), ("46", "10"), ("48", "12"), ("72", "37")):
            assert rm[dup] == rm[keep]

    def test_g2_keeps_near_pair_distinct(self, g2_graph):
        g, h = g2_graph.labels["G"], g2_graph.labels["H"]
        assert g != h
        gap = distance(g2_graph.vertices[g], g2_graph.vertices[h])
        assert mpf("6e-5") < gap < mpf("7e-5")

    def test_g1_drops_self_loop_rows(self):
        raw = fixtures.load_raw("g1")
        loops = [(a, b) for a, b in raw.edge_rows if a == b]
        assert (1, 1) in loops and (39, 39) in loops
        g = ingest_fixture(raw)
        assert all(a != b for a, b in g.edges)
        assert g.meta["dropped_self_loops"] >= len(loops)

    def test_high_precision_edges_near_unit(self):
        for name in ("g1", "g2", "g4"):
            g = fixtures.load(name)
            worst = max(abs(distance(g.vertices[a], g.vertices[b]) - 1) for a, b in g.edges)
            assert worst < mpf("1e-13")

    def test_ingest_idempotent_through_serialization(self, g2_graph):
        doc = json.loads(dumps_graph(g2_graph))
        again = graph_from_dict(doc)
        assert again.edges == g2_graph.edges
        assert again.designated == g2_graph.designated
        assert all(
            p.x == q.x and p.y == q.y for p, q in zip(again.vertices, g2_graph.vertices)
        )

    def test_merge_ambiguity_detected(self):
        raw = RawFixture(
            name="chain",
            coordinates=((1, "0.0", "0.0"), (2, "0.0000000008", "0.0"), (3, "0.0000000016", "0.0")),
            edge_rows=(),
            precision_class="high",
            declared_triangles=0,
        )
        with pytest.raises(MergeAmbiguity):
            ingest_fixture(raw)

    def test_sketch_has_no_derived_designated(self):
        g = fixtures.load("fig1-left")
        assert g.designated == ()
        assert g.meta["declared_triangles"] == 42

    def test_sketches_are_4_regular(self):
        for name in ("fig1-left", "fig1-right"):
            g = fixtures.load(name)
            assert degree_histogram(g) == {4: 63}

    def test_reingest_of_merged_graph_changes_nothing(self, g2_graph):
        from matchstick.precision import scalar_to_str

        raw = RawFixture(
            name="reingest",
            coordinates=tuple(
                (i, scalar_to_str(p.x), scalar_to_str(p.y))
                for i, p in enumerate(g2_graph.vertices)
            ),
            edge_rows=g2_graph.edges,
            precision_class="high",
            declared_triangles=38,
        )
        again = ingest_fixture(raw)
        assert len(again.vertices) == len(g2_graph.vertices)
        assert again.edges == g2_graph.edges
        assert again.designated == g2_graph.designated
        assert again.meta["dropped_self_loops"] == 0
        assert again.meta["dropped_duplicate_edges"] == 0


class TestStructure:
    def test_degree_histogram_triangle(self):
        assert degree_histogram(_triangle_graph()) == {2: 3}

    def test_degree_histogram_fixtures(self, g2_graph, g1_graph):
        assert set(degree_histogram(g2_graph)) == {2, 4}
        assert set(degree_histogram(g1_graph)) == {2, 4}

    def test_unit_three_cycles_triangle(self):
        assert unit_three_cycles(_triangle_graph(), mpf("1e-12")) == {(0, 1, 2)}

    def test_unit_three_cycles_g2(self, g2_graph):
        cycles = unit_three_cycles(g2_graph, mpf("1e-12"))
        assert len(cycles) == 38
        assert cycles == set(g2_graph.designated)

    def test_fig1_left_hole_triple(self):
        g = fixtures.load("fig1-left")
        rm = g.meta["row_map"]
        cycles = unit_three_cycles(g, mpf("0.05"))
        assert len(cycles) > 42
        assert tuple(sorted((rm["19"], rm["20"], rm["21"]))) in cycles

    def test_unit_three_cycles_requires_positive_tol(self):
        with pytest.raises(ValueError):
            unit_three_cycles(_triangle_graph(), 0)

    def test_rejects_bad_construction(self):
        v = (Point(0, 0), Point(1, 0))
        with pytest.raises(ValueError):
            UnitGraph(vertices=v, edges=((0, 0),))
        with pytest.raises(ValueError):
            UnitGraph(vertices=v, edges=((0, 1), (1, 0)))
        with pytest.raises(ValueError):
            UnitGraph(vertices=v, edges=((0, 2),))
        with pytest.raises(ValueError):
            UnitGraph(vertices=v, edges=((0, 1),), designated=((0, 1, 1),))
