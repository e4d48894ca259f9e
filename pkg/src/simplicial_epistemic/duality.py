"""Epistemic frames and their conversion to and from chromatic complexes."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .complex import ChromaticComplex, Vertex
from .errors import ImproperFrame, NotEquivalence


def _closure(worlds: Sequence[str], pairs: Iterable[tuple[str, str]]) -> list[frozenset]:
    """Equivalence classes generated by ``pairs`` (union-find)."""
    parent = {w: w for w in worlds}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        if u not in parent or v not in parent:
            raise NotEquivalence(f"pair ({u}, {v}) mentions an unknown world")
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    classes: dict[str, set] = {}
    for w in worlds:
        classes.setdefault(find(w), set()).add(w)
    return sorted((frozenset(c) for c in classes.values()), key=min)


@dataclass(frozen=True)
class EpistemicFrame:
    """Worlds plus one partition of the worlds per agent.

    ``classes[a]`` lists the ~a equivalence classes, each a frozenset of worlds.
    """

    worlds: tuple[str, ...]
    classes: Mapping[str, tuple[frozenset, ...]]

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(self.classes)

    @classmethod
    def from_relations(
        cls, worlds: Iterable[str], relations: Mapping[str, Iterable[tuple[str, str]]]
    ) -> "EpistemicFrame":
        """Build from complete relations, checking each is an equivalence."""
        worlds = tuple(worlds)
        known = set(worlds)
        classes = {}
        for agent, rel in relations.items():
            rel = set(map(tuple, rel))
            for u, v in rel:
                if u not in known or v not in known:
                    raise NotEquivalence(f"~{agent} relates unknown world in ({u}, {v})")
            for w in worlds:
                if (w, w) not in rel:
                    raise NotEquivalence(f"~{agent} is not reflexive at {w}")
            for u, v in rel:
                if (v, u) not in rel:
                    raise NotEquivalence(f"~{agent} is not symmetric on ({u}, {v})")
            for u, v in rel:
                for x, y in rel:
                    if v == x and (u, y) not in rel:
                        raise NotEquivalence(f"~{agent} is not transitive on {u}, {v}, {y}")
            classes[agent] = tuple(_closure(worlds, rel))
        return cls(worlds, classes)

    @classmethod
    def from_generators(
        cls, worlds: Iterable[str], generators: Mapping[str, Iterable[tuple[str, str]]]
    ) -> "EpistemicFrame":
        """Build from generating pairs; the equivalence closure is taken."""
        worlds = tuple(worlds)
        return cls(worlds, {a: tuple(_closure(worlds, gens)) for a, gens in generators.items()})

    def class_of(self, agent: str, world: str) -> frozenset:
        for cl in self.classes[agent]:
            if world in cl:
                return cl
        raise KeyError(world)

    def related(self, agent: str, u: str, v: str) -> bool:
        return v in self.class_of(agent, u)

    def relation(self, agent: str) -> set[tuple[str, str]]:
        return {(u, v) for cl in self.classes[agent] for u in cl for v in cl}

    def is_proper(self) -> bool:
        signatures = {tuple(min(self.class_of(a, w)) for a in self.agents) for w in self.worlds}
        return len(signatures) == len(self.worlds)

    def generators(self) -> dict[str, list[list[str]]]:
        """A small generating set: each class as a star from its minimum."""
        out = {}
        for a, cls_ in self.classes.items():
            pairs = []
            for cl in cls_:
                root = min(cl)
                pairs.extend([root, w] for w in sorted(cl) if w != root)
            out[a] = pairs
        return out


def frame_to_complex(f: EpistemicFrame) -> ChromaticComplex:
    """One vertex per (agent, class), named ``agent:min-world``; one facet per world."""
    if not f.is_proper():
        raise ImproperFrame("two distinct worlds are indistinguishable to every agent")
    vertices = []
    for a in f.agents:
        for cl in f.classes[a]:
            vertices.append(Vertex(f"{a}:{min(cl)}", a, {"class": sorted(cl)}))
    facets = [[f"{a}:{min(f.class_of(a, w))}" for a in f.agents] for w in f.worlds]
    return ChromaticComplex(f.agents, vertices, facets)


def complex_to_frame(c: ChromaticComplex, names: Sequence[str] | None = None) -> EpistemicFrame:
    """Worlds are the facets (named ``w0``, ``w1``... unless ``names`` given);
    w ~a w' iff they contain the same a-colored vertex."""
    names = list(names) if names is not None else [f"w{i}" for i in range(len(c.facets))]
    if len(names) != len(c.facets):
        raise ValueError("one name per facet required")
    classes = {}
    for a in c.agents:
        groups: dict[str, set] = {}
        for i in range(len(c.facets)):
            groups.setdefault(c.vertex_of(i, a).id, set()).add(names[i])
        classes[a] = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    return EpistemicFrame(tuple(names), classes)


def frame_from_json(data: Mapping) -> EpistemicFrame:
    """``{"worlds": [...], "relations": {"a": [[w, w'], ...]}}``; pairs generate."""
    worlds = [str(w) for w in data["worlds"]]
    rel = {str(a): [(str(u), str(v)) for u, v in pairs] for a, pairs in data["relations"].items()}
    return EpistemicFrame.from_generators(worlds, rel)


def frame_to_json(f: EpistemicFrame) -> dict:
    return {"worlds": list(f.worlds), "relations": f.generators()}

