from __future__ import annotations

import json
import random

import pytest
from mpmath import mpf

from matchstick.errors import ParseError, VersionError
from matchstick.geometry import Point, distance
from matchstick.graph import UnitGraph
from matchstick.graphio import (
    dumps_graph,
    graph_from_dict,
    read_graph,
    write_graph,
)


def _random_graph(seed, n=10):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        p = Point(
            mpf(rng.randrange(-4000, 4000)) / 1000 + mpf(rng.random()),
            mpf(rng.randrange(-4000, 4000)) / 1000 + mpf(rng.random()),
        )
        if all(distance(p, q) > mpf("1e-6") for q in pts):
            pts.append(p)
    edges = set()
    for _ in range(2 * n):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    meta = {"seed": seed, "custom-key": {"nested": [1, 2, 3]}}
    return UnitGraph(vertices=pts, edges=sorted(edges), meta=meta)


class TestRoundTrip:
    def test_fixture_exact(self, g2_graph, tmp_path):
        path = tmp_path / "g2.json"
        write_graph(g2_graph, path)
        back = read_graph(path)
        assert back.edges == g2_graph.edges
        assert back.designated == g2_graph.designated
        assert back.labels == g2_graph.labels
        for p, q in zip(back.vertices, g2_graph.vertices):
            assert p.x == q.x and p.y == q.y

    def test_empty_graph(self, tmp_path):
        path = tmp_path / "empty.json"
        write_graph(UnitGraph(vertices=(), edges=()), path)
        back = read_graph(path)
        assert back.vertices == () and back.edges == ()

    def test_write_read_write_byte_identical(self, g2_graph):
        text = dumps_graph(g2_graph)
        again = dumps_graph(graph_from_dict(json.loads(text)))
        assert text == again

    def test_unknown_meta_preserved(self):
        g = _random_graph(1)
        back = graph_from_dict(json.loads(dumps_graph(g)))
        assert back.meta["custom-key"] == {"nested": [1, 2, 3]}

    def test_randomized_lossless(self):
        for seed in range(100):
            g = _random_graph(seed)
            back = graph_from_dict(json.loads(dumps_graph(g)))
            assert back.edges == g.edges
            for p, q in zip(back.vertices, g.vertices):
                assert p.x == q.x and p.y == q.y


class TestErrors:
    def test_version_error(self):
        with pytest.raises(VersionError):
            graph_from_dict({"format": "msf-graph/999"})

    def test_parse_error_context(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ParseError) as err:
            read_graph(path)
        assert "line" in str(err.value)

    def test_bad_vertex_ids(self):
        with pytest.raises(ParseError):
            graph_from_dict(
                {
                    "format": "msf-graph/1",
                    "vertices": [[0, "0.0", "0.0"], [2, "1.0", "0.0"]],
                    "edges": [],
                }
            )
