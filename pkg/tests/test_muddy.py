import pytest

from simplicial_epistemic.errors import TooFewAgents
from simplicial_epistemic.muddy import (
    MUDDY_VALUATION,
    announcement_sequence,
    muddy_children_complex,
    world_name,
)


def test_world_names_cover_all_statuses():
    c = muddy_children_complex()
    assert sorted(world_name(c, i) for i in range(8)) == [f"{k:03b}" for k in range(8)]


def test_status_read_from_other_children():
    c = muddy_children_complex()
    i = next(i for i in range(8) if world_name(c, i) == "101")
    assert MUDDY_VALUATION.value(c, i, "pink", "input") == 1
    assert MUDDY_VALUATION.value(c, i, "blue", "input") == 0
    assert MUDDY_VALUATION.value(c, i, "pink", "decision") is None


def test_four_children():
    stages = announcement_sequence([f"k{i}" for i in range(4)])
    assert [len(s.model.facets) for s in stages] == [16, 15, 11, 5, 1]
    assert stages[-1].knows == {"1111": ("k0", "k1", "k2", "k3")}


def test_two_children():
    stages = announcement_sequence(["x", "y"])
    assert [len(s.model.facets) for s in stages] == [4, 3, 1]


def test_too_few_children():
    with pytest.raises(TooFewAgents):
        muddy_children_complex(["solo"])
