"""Communication graphs, the built-in communication models, and
full-information rounds producing protocol complexes."""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any

from .complex import ChromaticComplex, Vertex
from .errors import AgentSetMismatch, TooFewAgents, UnknownKind

MODEL_KINDS = ("ub", "is", "tas")


@dataclass(frozen=True)
class LocalState:
    """Full-information view of one agent.

    Round 0 holds the input ``value``. Later rounds hold ``received``: the
    previous-round states of every sender heard from, sorted by sender, the
    agent itself always among them. Senders not heard from are absent.
    """

    agent: str
    value: Any = None
    received: tuple[tuple[str, "LocalState"], ...] | None = None

    @classmethod
    def initial(cls, agent: str, value: Any) -> "LocalState":
        return cls(agent, value, None)

    @classmethod
    def after(cls, agent: str, received: Mapping[str, "LocalState"]) -> "LocalState":
        if agent not in received:
            raise ValueError(f"{agent} must receive its own previous state")
        for sender, st in received.items():
            if st.agent != sender:
                raise ValueError(f"state of {st.agent} filed under sender {sender}")
        return cls(agent, None, tuple(sorted(received.items())))

    @cached_property
    def round(self) -> int:
        if self.received is None:
            return 0
        return 1 + dict(self.received)[self.agent].round

    @property
    def view(self) -> dict[str, "LocalState"]:
        return dict(self.received or ())

    @property
    def senders(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.received or ())

    @property
    def previous(self) -> "LocalState":
        """The agent's own state one round earlier."""
        if self.received is None:
            raise ValueError("round-0 state has no previous state")
        return self.view[self.agent]

    @cached_property
    def input(self) -> Any:
        if self.received is None:
            return self.value
        return self.previous.input

    def entry(self, key: str) -> Any:
        if key == "input":
            return self.input
        return None

    @cached_property
    def _canonical(self) -> str:
        if self.received is None:
            return f"{self.agent}:{self.value}"
        return f"{self.agent}[" + "|".join(st.canonical() for _, st in self.received) + "]"

    def canonical(self) -> str:
        return self._canonical

    def __str__(self) -> str:
        return self._canonical


def canonical_state(s: LocalState) -> str:
    """Order-independent serialization: ``a:1`` or ``a[a:0|b:1]``."""
    return s.canonical()


_TOKEN = re.compile(r"[A-Za-z0-9_.\-]+|[\[\]|:]")


def parse_state(text: str) -> LocalState:
    """Inverse of :func:`canonical_state`."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != text:
        raise ValueError(f"unexpected character in state {text!r}")
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"truncated state {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def state() -> LocalState:
        agent = take()
        sep = take()
        if sep == ":":
            raw = take()
            return LocalState.initial(agent, int(raw) if re.fullmatch(r"-?\d+", raw) else raw)
        if sep != "[":
            raise ValueError(f"expected ':' or '[' in state {text!r}")
        received = {}
        while True:
            sub = state()
            received[sub.agent] = sub
            tok = take()
            if tok == "]":
                break
            if tok != "|":
                raise ValueError(f"expected '|' or ']' in state {text!r}")
        return LocalState.after(agent, received)

    result = state()
    if pos != len(tokens):
        raise ValueError(f"trailing input in state {text!r}")
    return result


@dataclass(frozen=True)
class CommGraph:
    """Reflexive directed graph; an edge (s, r) means r received s's message."""

    edges: frozenset

    @classmethod
    def from_in_neighbors(cls, inn: Mapping[str, Iterable[str]]) -> "CommGraph":
        return cls(frozenset((s, r) for r, senders in inn.items() for s in set(senders) | {r}))

    def in_neighbors(self, agent: str) -> frozenset:
        return frozenset(s for s, r in self.edges if r == agent)

    @property
    def agents(self) -> frozenset:
        return frozenset(x for e in self.edges for x in e)

    def is_reflexive(self, agents: Iterable[str]) -> bool:
        return all((a, a) in self.edges for a in agents)

    def key(self) -> tuple:
        return tuple(sorted(self.edges))


@dataclass(frozen=True)
class CommModel:
    name: str
    agents: tuple[str, ...]
    graphs: tuple[CommGraph, ...]

    def __len__(self) -> int:
        return len(self.graphs)


def ordered_partitions(items: Sequence[str]) -> Iterator[tuple[frozenset, ...]]:
    """All ordered set partitions of ``items`` (Fubini many)."""
    items = list(items)
    if not items:
        yield ()
        return
    for k in range(1, len(items) + 1):
        for first in combinations(items, k):
            rest = [x for x in items if x not in first]
            for tail in ordered_partitions(rest):
                yield (frozenset(first),) + tail


def _snapshot_graph(blocks: Sequence[frozenset], extra: Iterable[str] = ()) -> dict[str, set]:
    """In-neighbourhoods of an immediate-snapshot schedule given as ordered blocks."""
    inn: dict[str, set] = {}
    seen: set = set(extra)
    for block in blocks:
        seen |= block
        for a in block:
            inn[a] = set(seen)
    return inn


def make_model(kind: str, agents: Sequence[str]) -> CommModel:
    """Built-in communication models: ``ub``, ``is`` or ``tas``."""
    agents = tuple(agents)
    if kind not in MODEL_KINDS:
        raise UnknownKind(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
    if len(agents) < 2 or len(set(agents)) != len(agents):
        raise TooFewAgents(f"need at least two distinct agents, got {agents}")

    graphs: list[CommGraph] = []
    if kind == "ub":
        for k in range(1, len(agents) + 1):
            for broadcasters in combinations(agents, k):
                inn = {a: set(broadcasters) for a in agents}
                graphs.append(CommGraph.from_in_neighbors(inn))
    elif kind == "is":
        for blocks in ordered_partitions(agents):
            graphs.append(CommGraph.from_in_neighbors(_snapshot_graph(blocks)))
    else:
        for winner in agents:
            losers = [a for a in agents if a != winner]
            for blocks in ordered_partitions(losers):
                inn = _snapshot_graph(blocks, extra=[winner])
                inn[winner] = {winner}
                graphs.append(CommGraph.from_in_neighbors(inn))

    unique = {g.key(): g for g in graphs}
    return CommModel(kind, agents, tuple(unique[k] for k in sorted(unique)))


def _round_states(
    row: Sequence[LocalState], agents: Sequence[str], graph: CommGraph, movers: Iterable[str]
) -> dict[str, LocalState]:
    current = dict(zip(agents, row))
    return {a: LocalState.after(a, {s: current[s] for s in graph.in_neighbors(a)}) for a in movers}


def _states_of(c: ChromaticComplex, i: int) -> list[LocalState]:
    row = [c.vertices[vid].state for vid in c.rows[i]]
    for st in row:
        if not isinstance(st, LocalState):
            raise TypeError("rounds need LocalState payloads on every vertex")
    return row


def _assemble(
    agents: Sequence[str], executions: Iterable[tuple[Sequence[LocalState], frozenset]]
) -> ChromaticComplex:
    vertices: dict[str, Vertex] = {}
    facets = []
    carrier: dict[frozenset, frozenset] = {}
    for states, origin in executions:
        ids = []
        for a, st in zip(agents, states):
            vid = st.canonical()
            vertices.setdefault(vid, Vertex(vid, a, st))
            ids.append(vid)
        f = frozenset(ids)
        facets.append(f)
        carrier[f] = origin
    return ChromaticComplex(agents, vertices.values(), facets, carrier)


def one_round(c: ChromaticComplex, m: CommModel) -> ChromaticComplex:
    """One full-information round under every graph of ``m``.

    Vertices with the same (agent, state) are merged across all executions.
    The result records for each facet the input facet it descends from; when
    ``c`` has no carrier it is treated as the input complex.
    """
    if set(m.agents) != set(c.agents):
        raise AgentSetMismatch(f"model agents {m.agents} vs complex agents {c.agents}")

    def executions():
        for i in range(len(c.facets)):
            row = _states_of(c, i)
            origin = c.carrier[i] if c.carrier is not None else c.facets[i]
            for g in m.graphs:
                new = _round_states(row, c.agents, g, c.agents)
                yield [new[a] for a in c.agents], origin

    return _assemble(c.agents, executions())


def iterate_rounds(c: ChromaticComplex, m: CommModel, rounds: int) -> ChromaticComplex:
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    for _ in range(rounds):
        c = one_round(c, m)
    return c


Qualifier = Callable[[str, LocalState], bool]


def partial_round(c: ChromaticComplex, qualifies: Qualifier) -> ChromaticComplex:
    """Extra immediate-snapshot round among the qualifying agents of each facet.

    Facets with at most one qualifying agent are kept verbatim; otherwise the
    qualifying agents run every immediate-snapshot schedule among themselves
    while the others keep their states.
    """

    def executions():
        for i in range(len(c.facets)):
            row = _states_of(c, i)
            origin = c.carrier[i] if c.carrier is not None else c.facets[i]
            movers = [a for a, st in zip(c.agents, row) if qualifies(a, st)]
            if len(movers) <= 1:
                yield row, origin
                continue
            for g in make_model("is", movers).graphs:
                new = _round_states(row, c.agents, g, movers)
                yield [new.get(a, st) for a, st in zip(c.agents, row)], origin

    return _assemble(c.agents, executions())
