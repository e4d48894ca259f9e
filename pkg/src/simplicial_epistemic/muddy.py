"""Muddy children as a sequence of public announcements on a simplicial model.

Each child's vertex records what it sees on the other foreheads. A child's own
status is therefore read off the other children's vertices, so the atom
``(= input child 1)`` means "child is muddy".
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any

from .complex import ChromaticComplex, Vertex
from .duality import EpistemicFrame
from .errors import EmptyModel, TooFewAgents
from .logic import And, Atom, Formula, K, Not, Or, public_announce, truth_table

CHILDREN = ("pink", "blue", "yellow")


class MuddyValuation:
    """Status of a child as seen by any other child in the same world."""

    def value(self, c: ChromaticComplex, w: int, agent: str, key: str) -> Any:
        if key != "input":
            return None
        for other in c.agents:
            if other != agent:
                return c.vertex_of(w, other).state["sees"][agent]
        return None

    def holds(self, c: ChromaticComplex, w: int, atom: Atom) -> bool:
        return self.value(c, w, atom.agent, atom.key) == atom.value


MUDDY_VALUATION = MuddyValuation()


def _vertex_id(children: Sequence[str], i: int, world: Sequence[int]) -> str:
    seen = "".join("_" if j == i else str(x) for j, x in enumerate(world))
    return f"{children[i]}:{seen}"


def muddy_children_complex(children: Sequence[str] = CHILDREN) -> ChromaticComplex:
    children = tuple(children)
    if len(children) < 2:
        raise TooFewAgents("need at least two children")
    vertices = {}
    facets = []
    for world in product((0, 1), repeat=len(children)):
        ids = []
        for i, child in enumerate(children):
            vid = _vertex_id(children, i, world)
            sees = {o: x for j, (o, x) in enumerate(zip(children, world)) if j != i}
            vertices.setdefault(vid, Vertex(vid, child, {"sees": sees}))
            ids.append(vid)
        facets.append(ids)
    return ChromaticComplex(children, vertices.values(), facets)


def muddy_kripke_frame(children: Sequence[str] = CHILDREN) -> EpistemicFrame:
    """Worlds are status strings; a child confuses worlds differing only in its own bit."""
    n = len(children)
    worlds = ["".join(map(str, w)) for w in product((0, 1), repeat=n)]
    rel = {}
    for i, child in enumerate(children):
        rel[child] = {(u, v) for u in worlds for v in worlds if all(u[j] == v[j] for j in range(n) if j != i)}
    return EpistemicFrame.from_relations(worlds, rel)


def world_name(c: ChromaticComplex, w: int) -> str:
    return "".join(str(MUDDY_VALUATION.value(c, w, a, "input")) for a in c.agents)


def muddy(child: str) -> Atom:
    return Atom(child, "input", 1)


def at_least_one_muddy(children: Sequence[str]) -> Formula:
    return Or(tuple(muddy(c) for c in children))


def nobody_knows(children: Sequence[str]) -> Formula:
    """No child knows it is muddy (nobody raises a hand)."""
    return And(tuple(Not(K(c, muddy(c))) for c in children))


@dataclass(frozen=True)
class Stage:
    label: str
    model: ChromaticComplex
    knows: dict[str, tuple[str, ...]]  # world name -> children knowing they are muddy


def _knowledge(c: ChromaticComplex) -> dict[str, tuple[str, ...]]:
    tables = {a: truth_table(c, K(a, muddy(a)), MUDDY_VALUATION) for a in c.agents}
    return {world_name(c, i): tuple(a for a in c.agents if tables[a][i]) for i in range(len(c.facets))}


def announcement_sequence(children: Sequence[str] = CHILDREN) -> list[Stage]:
    """Initial model, the teacher's announcement, then "nobody knows" until
    someone knows or the model stops shrinking."""
    c = muddy_children_complex(children)
    stages = [Stage("initial", c, _knowledge(c))]
    c = public_announce(c, at_least_one_muddy(children), MUDDY_VALUATION)
    stages.append(Stage("at least one is muddy", c, _knowledge(c)))
    question = 1
    while True:
        try:
            nxt = public_announce(c, nobody_knows(children), MUDDY_VALUATION)
        except EmptyModel:
            break
        if len(nxt.facets) == len(c.facets):
            break
        c = nxt
        stages.append(Stage(f"nobody knows (question {question})", c, _knowledge(c)))
        question += 1
    return stages
