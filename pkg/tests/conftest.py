import pytest

from simplicial_epistemic import (
    binary_input_complex,
    make_model,
    make_task,
    one_round,
    partial_round,
    tas_loser_qualifies,
)
from simplicial_epistemic.complex import Vertex, build_complex
from simplicial_epistemic.logic import cd_not_all, pair_knowledge_obstruction

AGENTS = ("a", "b", "c")
ALL_ZERO = frozenset({"a:0", "b:0", "c:0"})
ALL_ONE = frozenset({"a:1", "b:1", "c:1"})


@pytest.fixture(scope="session")
def agents():
    return AGENTS


@pytest.fixture(scope="session")
def inputs():
    return binary_input_complex(AGENTS)


@pytest.fixture(scope="session")
def majority0():
    return make_task("majority0", AGENTS)


@pytest.fixture(scope="session")
def consensus():
    return make_task("consensus", AGENTS)


@pytest.fixture(scope="session")
def protocols(inputs):
    """One-round protocol complexes over the full binary input complex."""
    return {k: one_round(inputs, make_model(k, AGENTS)) for k in ("ub", "is", "tas")}


@pytest.fixture(scope="session")
def tas_refined(protocols):
    return partial_round(protocols["tas"], tas_loser_qualifies)


@pytest.fixture(scope="session")
def single_triangle(inputs):
    keep = ["a:0", "b:0", "c:0"]
    return build_complex(AGENTS, [inputs.vertices[v] for v in keep], [keep])


@pytest.fixture(scope="session")
def cd_not_all_ones():
    return cd_not_all(AGENTS, 1)


@pytest.fixture(scope="session")
def pair_obstruction():
    return pair_knowledge_obstruction(AGENTS)


@pytest.fixture(scope="session")
def example_frame_complex():
    """Three worlds: w1, w2 share the ab-edge, w2, w3 share the c-vertex."""
    vs = [Vertex(n, n[0]) for n in ("a1", "a2", "b1", "b2", "c1", "c2")]
    return build_complex(AGENTS, vs, [["a1", "b1", "c1"], ["a1", "b1", "c2"], ["a2", "b2", "c2"]])
