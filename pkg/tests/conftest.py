from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from influence_forge import StubbornProfile, WeightedDigraph
from influence_forge.graph_io import parse_graph_document

from .oracles import flow_graph, ring

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def ring3() -> WeightedDigraph:
    return ring(3)


@pytest.fixture
def ring4() -> WeightedDigraph:
    return ring(4)


@pytest.fixture
def ring5() -> WeightedDigraph:
    return ring(5)


@pytest.fixture
def five_node() -> WeightedDigraph:
    """Two rings sharing node 0, plus a chord 1 -> 4.

    Node 0 is the unique global communicator; levels under 0 are
    ((0,), (1, 3), (2, 4)).
    """
    return flow_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 4)])


@pytest.fixture
def cert_graph() -> WeightedDigraph:
    """Star of short cycles through hub 0 with agents at 1 and 2.

    With s1 = 1 and s2 = 2: nodes 3 and 4 are reachable only from agent 1
    (and funnelled through it), node 5 only from agent 2, nodes 6 and 7 from
    neither agent.
    """
    return flow_graph(
        8,
        [
            (0, 1), (0, 2), (0, 6), (0, 7),
            (1, 3), (1, 4), (2, 5),
            (3, 0), (4, 0), (5, 0), (6, 0), (7, 0),
        ],
    )


@pytest.fixture
def cert_profile(cert_graph: WeightedDigraph) -> StubbornProfile:
    return StubbornProfile.two_agent(cert_graph.n, 1, 0.4, 2, 0.6)


def _load_bundle(path: Path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_document(json.load(fh))


@pytest.fixture(scope="session")
def sampson_path() -> Path:
    return Path(str(resources.files("influence_forge") / "fixtures" / "sampson.json"))


@pytest.fixture(scope="session")
def sampson_bundle(sampson_path: Path):
    return _load_bundle(sampson_path)


@pytest.fixture(scope="session")
def inversion_path() -> Path:
    return FIXTURES / "inversion.json"


@pytest.fixture(scope="session")
def inversion_bundle(inversion_path: Path):
    return _load_bundle(inversion_path)
