from __future__ import annotations

import pytest

import matchstick as ms
from matchstick import fixtures


@pytest.fixture(scope="session")
def g2_graph():
    return fixtures.load("g2")


@pytest.fixture(scope="session")
def g1_graph():
    return fixtures.load("g1")


@pytest.fixture(scope="session")
def g2_template(g2_graph):
    return ms.build_template(g2_graph)


@pytest.fixture(scope="session")
def g1_template(g1_graph):
    return ms.build_template(g1_graph)


@pytest.fixture(scope="session")
def g2_anchor(g2_template):
    return ms.solve(g2_template, ms.RingSpec(169))


@pytest.fixture(scope="session")
def g1_anchor(g1_template):
    return ms.solve(g1_template, ms.RingSpec(100))


@pytest.fixture(scope="session")
def g2_base(g2_template, g2_anchor):
    return ms.mirror_close(g2_template, g2_anchor)


@pytest.fixture(scope="session")
def g1_base(g1_template, g1_anchor):
    return ms.mirror_close(g1_template, g1_anchor)


@pytest.fixture(scope="session")
def g2_ring(g2_base):
    return ms.ring_assemble(g2_base, ms.RingSpec(169))


@pytest.fixture(scope="session")
def g1_ring(g1_base):
    return ms.ring_assemble(g1_base, ms.RingSpec(100))
