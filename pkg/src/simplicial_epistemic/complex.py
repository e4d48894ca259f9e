"""Chromatic simplicial complexes.

Only pure complexes are supported. Faces are never stored: a complex is its
list of facets (worlds), and every face query is answered from them.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Union

from .errors import (
    DanglingVertexRef,
    DuplicateVertexId,
    EmptyGroup,
    IllColoredFacet,
    ImpureComplex,
    UnknownAgent,
    UnknownFacet,
)

Facet = frozenset  # of vertex ids
FacetRef = Union[int, Iterable[str]]
Group = tuple  # sorted tuple of agent names
GroupFamily = tuple  # sorted tuple of groups


def state_key(state: Any) -> str:
    """Deterministic string form of an opaque vertex payload."""
    if state is None:
        return ""
    canonical = getattr(state, "canonical", None)
    if callable(canonical):
        return canonical()
    if isinstance(state, str):
        return state
    return json.dumps(state, sort_keys=True, default=str)


@dataclass(frozen=True)
class Vertex:
    id: str
    color: str
    state: Any = None


def normalize_group(group: Iterable[str], agents: Sequence[str] | None = None) -> Group:
    g = tuple(sorted(set(group)))
    if not g:
        raise EmptyGroup("agent group must be nonempty")
    if agents is not None:
        unknown = [a for a in g if a not in agents]
        if unknown:
            raise UnknownAgent(f"unknown agent(s) {unknown}")
    return g


def normalize_family(alpha: Iterable[Iterable[str]], agents: Sequence[str] | None = None) -> GroupFamily:
    fam = tuple(sorted({normalize_group(g, agents) for g in alpha}))
    if not fam:
        raise EmptyGroup("group family must be nonempty")
    return fam


class ChromaticComplex:
    """An immutable, validated, canonically ordered pure chromatic complex.

    ``carrier`` optionally maps each facet to the input facet it descends
    from (a frozenset of vertex ids of some input complex).
    """

    def __init__(
        self,
        agents: Sequence[str],
        vertices: Iterable[Vertex],
        facets: Iterable[Iterable[str]],
        carrier: Mapping[frozenset, frozenset] | None = None,
    ):
        agents = tuple(agents)
        if len(set(agents)) != len(agents):
            raise DuplicateVertexId(f"duplicate agent in {agents}")
        table: dict[str, Vertex] = {}
        for v in vertices:
            if v.id in table:
                raise DuplicateVertexId(f"vertex id {v.id!r} used twice")
            if v.color not in agents:
                raise UnknownAgent(f"vertex {v.id!r} has color {v.color!r} outside {agents}")
            table[v.id] = v

        seen: dict[frozenset, frozenset | None] = {}
        for raw in facets:
            f = frozenset(raw)
            if not f:
                raise ImpureComplex("empty facet")
            for vid in f:
                if vid not in table:
                    raise DanglingVertexRef(f"facet references unknown vertex {vid!r}")
            colors = [table[vid].color for vid in f]
            if len(set(colors)) != len(colors):
                raise IllColoredFacet(f"facet {sorted(f)} repeats a color")
            if len(f) != len(agents):
                raise ImpureComplex(
                    f"facet {sorted(f)} has {len(f)} vertices, expected {len(agents)}"
                )
            target = None
            if carrier is not None:
                target = carrier.get(f)
            if f in seen and seen[f] != target:
                raise ValueError(f"facet {sorted(f)} listed with conflicting carriers")
            seen[f] = target

        used = set().union(*seen) if seen else set()
        isolated = sorted(set(table) - used)
        if isolated:
            raise ImpureComplex(f"vertices {isolated[:5]} lie in no facet")

        order = sorted(table.values(), key=lambda v: (v.color, state_key(v.state), v.id))
        self.agents: tuple[str, ...] = agents
        self.vertices: dict[str, Vertex] = {v.id: v for v in order}
        self.facets: tuple[frozenset, ...] = tuple(sorted(seen, key=lambda f: tuple(sorted(f))))
        if carrier is None:
            self.carrier: tuple[frozenset, ...] | None = None
        else:
            self.carrier = tuple(seen[f] for f in self.facets)

    # -- basic lookups -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChromaticComplex):
            return NotImplemented
        return (
            self.agents == other.agents
            and list(self.vertices.values()) == list(other.vertices.values())
            and self.facets == other.facets
            and self.carrier == other.carrier
        )

    def __repr__(self) -> str:
        return (
            f"ChromaticComplex(agents={self.agents}, vertices={len(self.vertices)}, "
            f"facets={len(self.facets)})"
        )

    @property
    def dimension(self) -> int:
        return len(self.agents) - 1

    @cached_property
    def _index(self) -> dict[frozenset, int]:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def rows(self) -> tuple[tuple[str, ...], ...]:
        """Facets as vertex-id tuples in agent order."""
        pos = {a: i for i, a in enumerate(self.agents)}
        out = []
        for f in self.facets:
            row = [""] * len(self.agents)
            for vid in f:
                row[pos[self.vertices[vid].color]] = vid
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def star(self) -> dict[str, tuple[int, ...]]:
        """Vertex id -> indices of the facets containing it."""
        acc: dict[str, list[int]] = defaultdict(list)
        for i, f in enumerate(self.facets):
            for vid in f:
                acc[vid].append(i)
        return {vid: tuple(acc[vid]) for vid in self.vertices}

    def facet_index(self, w: FacetRef) -> int:
        if isinstance(w, int):
            if 0 <= w < len(self.facets):
                return w
            raise UnknownFacet(f"facet index {w} out of range")
        key = frozenset(w)
        try:
            return self._index[key]
        except KeyError:
            raise UnknownFacet(f"{sorted(key)} is not a facet") from None

    def facet(self, w: FacetRef) -> frozenset:
        return self.facets[self.facet_index(w)]

    def vertex_of(self, w: FacetRef, agent: str) -> Vertex:
        """The ``agent``-colored vertex of facet ``w``."""
        try:
            pos = self.agents.index(agent)
        except ValueError:
            raise UnknownAgent(f"unknown agent {agent!r}") from None
        return self.vertices[self.rows[self.facet_index(w)][pos]]

    def face_of(self, w: FacetRef, group: Iterable[str]) -> tuple[str, ...]:
        """Vertex ids of the ``group``-colored face of ``w`` (group order)."""
        row = self.rows[self.facet_index(w)]
        return tuple(row[self.agents.index(a)] for a in normalize_group(group, self.agents))

    def carrier_of(self, w: FacetRef) -> frozenset | None:
        if self.carrier is None:
            return None
        return self.carrier[self.facet_index(w)]

    def colors(self, vertex_ids: Iterable[str]) -> frozenset:
        return frozenset(self.vertices[v].color for v in vertex_ids)

    # -- faces and connectivity ----------------------------------------------------

    def facets_sharing(self, w: FacetRef, group: Iterable[str]) -> tuple[int, ...]:
        """Indices of facets containing the ``group``-colored face of ``w``."""
        g = normalize_group(group, self.agents)
        return self._face_table(g)[self.face_of(w, g)]

    def _face_table(self, group: Group) -> dict[tuple[str, ...], tuple[int, ...]]:
        cache = self.__dict__.setdefault("_face_tables", {})
        if group not in cache:
            pos = [self.agents.index(a) for a in group]
            acc: dict[tuple[str, ...], list[int]] = defaultdict(list)
            for i, row in enumerate(self.rows):
                acc[tuple(row[p] for p in pos)].append(i)
            cache[group] = {k: tuple(v) for k, v in acc.items()}
        return cache[group]

    def components(self, alpha: Iterable[Iterable[str]]) -> tuple[int, ...]:
        """Component label (smallest member index) of every facet under the
        relation "shares the A-colored face for some A in alpha"."""
        fam = normalize_family(alpha, self.agents)
        cache = self.__dict__.setdefault("_components", {})
        if fam in cache:
            return cache[fam]
        parent = list(range(len(self.facets)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in fam:
            for members in self._face_table(g).values():
                root = find(members[0])
                for m in members[1:]:
                    r = find(m)
                    if r != root:
                        lo, hi = min(r, root), max(r, root)
                        parent[hi] = lo
                        root = lo
        labels = tuple(find(i) for i in range(len(self.facets)))
        cache[fam] = labels
        return labels


def build_complex(
    agents: Sequence[str],
    vertices: Iterable[Vertex],
    facets: Iterable[Iterable[str]],
    carrier: Mapping[frozenset, frozenset] | None = None,
) -> ChromaticComplex:
    """Validate and canonicalize a pure chromatic complex."""
    return ChromaticComplex(agents, vertices, facets, carrier)


def facet_intersection(c: ChromaticComplex, w1: FacetRef, w2: FacetRef) -> tuple[frozenset, frozenset]:
    """Shared face of two facets and its color set."""
    shared = c.facet(w1) & c.facet(w2)
    return shared, c.colors(shared)


def reachable_worlds(c: ChromaticComplex, start: FacetRef, alpha: Iterable[Iterable[str]]) -> frozenset:
    """Facets reachable from ``start`` by steps across shared A-colored faces, A in alpha.

    Breadth-first in canonical facet order; returns facets as vertex-id sets.
    """
    fam = normalize_family(alpha, c.agents)
    s = c.facet_index(start)
    tables = [(g, c._face_table(g)) for g in fam]
    pos = {g: [c.agents.index(a) for a in g] for g in fam}
    seen = {s}
    queue = deque([s])
    while queue:
        i = queue.popleft()
        row = c.rows[i]
        nbrs = set()
        for g, table in tables:
            nbrs.update(table[tuple(row[p] for p in pos[g])])
        for j in sorted(nbrs - seen):
            seen.add(j)
            queue.append(j)
    return frozenset(c.facets[i] for i in seen)


def all_faces(c: ChromaticComplex) -> set[frozenset]:
    """Every nonempty simplex of ``c`` (downward closure of the facets)."""
    faces: set[frozenset] = set()
    for f in c.facets:
        members = sorted(f)
        for k in range(1, len(members) + 1):
            faces.update(frozenset(s) for s in combinations(members, k))
    return faces


def face_counts(c: ChromaticComplex) -> list[int]:
    """Number of faces per dimension, index 0 = vertices."""
    counts = [0] * len(c.agents)
    for face in all_faces(c):
        counts[len(face) - 1] += 1
    return counts


def euler_characteristic(c: ChromaticComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(face_counts(c)))


def is_k_connected(c: ChromaticComplex, k: int) -> bool:
    """Edge-path connectivity through shared faces of ``k`` vertices."""
    if not c.facets:
        return True
    alpha = [g for g in combinations(sorted(c.agents), k)]
    return len(set(c.components(alpha))) == 1
