"""Tasks (input complex, output complex, allowed-output relation), decision
maps, the decision-map search, and the knowledge-gain obstruction check."""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .communication import LocalState, parse_state
from .complex import ChromaticComplex, FacetRef, Vertex
from .errors import MissingCarrier, PartialMap, UnknownKind, UnsupportedAgentCount
from .logic import Formula, eval_formula, is_positive, state_entry, to_sexpr, truth_table

TASK_KINDS = ("consensus", "majority0")

DecisionMap = dict  # vertex id -> decision value


@dataclass(frozen=True)
class Task:
    name: str
    input: ChromaticComplex
    output: ChromaticComplex
    delta: Mapping[frozenset, tuple[frozenset, ...]]

    def allowed(self, input_facet: frozenset) -> tuple[frozenset, ...]:
        try:
            return self.delta[input_facet]
        except KeyError:
            raise MissingCarrier(f"{sorted(input_facet)} is not an input facet of {self.name}") from None


def output_value(state: Any) -> Any:
    """Decision carried by an output vertex (input complexes reused as outputs read ``input``)."""
    v = state_entry(state, "decision")
    return state_entry(state, "input") if v is None else v


def values_of(c: ChromaticComplex, w: FacetRef, reader=output_value) -> tuple:
    """Payload values of a facet in agent order."""
    return tuple(reader(c.vertex_of(w, a).state) for a in c.agents)


def binary_input_complex(agents: Sequence[str]) -> ChromaticComplex:
    """Every assignment of 0/1 inputs; vertex ids are round-0 canonical states."""
    agents = tuple(agents)
    if not agents:
        raise UnsupportedAgentCount("need at least one agent")
    vertices = [Vertex(f"{a}:{v}", a, LocalState.initial(a, v)) for a in agents for v in (0, 1)]
    facets = [[f"{a}:{v}" for a, v in zip(agents, vals)] for vals in product((0, 1), repeat=len(agents))]
    return ChromaticComplex(agents, vertices, facets)


def make_task(kind: str, agents: Sequence[str]) -> Task:
    """Binary ``consensus`` or ``majority0`` (strict majority of zeros may disagree)."""
    agents = tuple(agents)
    if kind not in TASK_KINDS:
        raise UnknownKind(f"unknown task {kind!r}; expected one of {TASK_KINDS}")
    if not agents:
        raise UnsupportedAgentCount("need at least one agent")
    n = len(agents)
    inputs = binary_input_complex(agents)

    outputs = []
    for vals in product((0, 1), repeat=n):
        agree = len(set(vals)) == 1
        if agree or (kind == "majority0" and 2 * vals.count(0) > n):
            outputs.append(vals)
    vertices = [Vertex(f"{a}:{d}", a, {"decision": d}) for a in agents for d in (0, 1)]
    out = ChromaticComplex(agents, vertices, [[f"{a}:{d}" for a, d in zip(agents, vals)] for vals in outputs])

    delta = {}
    for i in inputs.facets:
        allowed_vals = set(values_of(inputs, i))
        delta[i] = tuple(o for o in out.facets if set(values_of(out, o)) <= allowed_vals)
    return Task(kind, inputs, out, delta)


def input_complex_of(p: ChromaticComplex) -> ChromaticComplex:
    """Rebuild the input complex named by the carriers of a protocol complex."""
    if p.carrier is None:
        raise MissingCarrier("complex has no carrier annotation")
    facets = sorted(set(p.carrier), key=lambda f: tuple(sorted(f)))
    vertices = {}
    for f in facets:
        for vid in f:
            st = parse_state(vid)
            vertices[vid] = Vertex(vid, st.agent, st)
    return ChromaticComplex(p.agents, vertices.values(), facets)


def product_update(t: Task) -> ChromaticComplex:
    """Complex of (input world, allowed output world) pairs.

    Vertex ``a:x/d`` pairs agent a's input vertex with decision d and carries
    ``{"input": x, "decision": d}``. The carrier records the input facet.
    """
    agents = t.input.agents
    vertices: dict[str, Vertex] = {}
    facets = []
    carrier = {}
    for i in t.input.facets:
        for o in t.allowed(i):
            ids = []
            for a in agents:
                iv = t.input.vertex_of(i, a)
                d = output_value(t.output.vertex_of(o, a).state)
                vid = f"{iv.id}/{d}"
                vertices.setdefault(vid, Vertex(vid, a, {"input": state_entry(iv.state, "input"), "decision": d}))
                ids.append(vid)
            f = frozenset(ids)
            facets.append(f)
            carrier[f] = i
    return ChromaticComplex(agents, vertices.values(), facets, carrier)


# -- decision maps --------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    facet: int
    decided: tuple
    reason: str  # "not-an-output-facet" or "not-in-delta"


@dataclass
class Validation:
    valid: bool
    violations: list[Violation] = field(default_factory=list)


def _carrier(p: ChromaticComplex, i: int) -> frozenset:
    target = p.carrier_of(i)
    if target is None:
        raise MissingCarrier(f"facet {i} has no carrier")
    return target


def _allowed_tuples(t: Task, p: ChromaticComplex) -> tuple[set, list[set]]:
    out_tuples = {values_of(t.output, o) for o in t.output.facets}
    cache: dict[frozenset, set] = {}
    per_facet = []
    for i in range(len(p.facets)):
        target = _carrier(p, i)
        if target not in cache:
            cache[target] = {values_of(t.output, o) for o in t.allowed(target)} & out_tuples
        per_facet.append(cache[target])
    return out_tuples, per_facet


def validate_decision_map(t: Task, p: ChromaticComplex, d: Mapping[str, Any]) -> Validation:
    """Check every facet's decided tuple is an output facet allowed for its carrier."""
    missing = [vid for vid in p.vertices if vid not in d]
    if missing:
        raise PartialMap(f"no decision for {len(missing)} vertices, e.g. {missing[0]!r}")
    out_tuples, allowed = _allowed_tuples(t, p)
    violations = []
    for i, row in enumerate(p.rows):
        decided = tuple(d[v] for v in row)
        if decided not in out_tuples:
            violations.append(Violation(i, decided, "not-an-output-facet"))
        elif decided not in allowed[i]:
            violations.append(Violation(i, decided, "not-in-delta"))
    return Validation(not violations, violations)


@dataclass(frozen=True)
class Unsolvable:
    nodes_explored: int

    def to_json(self) -> dict:
        return {"verdict": "unsolvable", "nodesExplored": self.nodes_explored}


@dataclass(frozen=True)
class Solved:
    decisions: DecisionMap
    nodes_explored: int


def search_decision_map(t: Task, p: ChromaticComplex) -> Solved | Unsolvable:
    """Backtracking over vertices in canonical order, values ascending, with
    generalized arc consistency on the per-facet allowed-tuple constraints."""
    _, allowed = _allowed_tuples(t, p)
    allowed_lists = [sorted(s) for s in allowed]
    values = sorted({x for tup in set().union(*allowed) for x in tup}) if allowed else []
    order = list(p.vertices)
    rows = p.rows
    star = p.star
    nodes = 0

    def propagate(domains: dict[str, frozenset], queue: deque) -> bool:
        queued = set(queue)
        while queue:
            f = queue.popleft()
            queued.discard(f)
            scope = rows[f]
            support = [tup for tup in allowed_lists[f] if all(x in domains[v] for x, v in zip(tup, scope))]
            if not support:
                return False
            for k, v in enumerate(scope):
                narrowed = frozenset(tup[k] for tup in support)
                if narrowed != domains[v]:
                    domains[v] = narrowed
                    for g in star[v]:
                        if g != f and g not in queued:
                            queued.add(g)
                            queue.append(g)
        return True

    domains = {v: frozenset(values) for v in order}
    if not propagate(domains, deque(range(len(rows)))):
        return Unsolvable(nodes)

    # explicit stack of (domains, var index) keeps deep searches off the recursion limit
    stack = [(domains, 0)]
    while stack:
        doms, start = stack.pop()
        k = start
        while k < len(order) and len(doms[order[k]]) == 1:
            k += 1
        if k == len(order):
            return Solved({v: next(iter(doms[v])) for v in order}, nodes)
        var = order[k]
        branches = []
        for x in sorted(doms[var]):
            nodes += 1
            trial = dict(doms)
            trial[var] = frozenset([x])
            if propagate(trial, deque(star[var])):
                branches.append((trial, k + 1))
        stack.extend(reversed(branches))
    return Unsolvable(nodes)


def decided_output(t: Task, p: ChromaticComplex, d: Mapping[str, Any], w: FacetRef) -> frozenset | None:
    """Output facet hit by world ``w`` under ``d`` (None when not an output facet)."""
    decided = tuple(d[v] for v in p.rows[p.facet_index(w)])
    for o in t.output.facets:
        if values_of(t.output, o) == decided:
            return o
    return None


def image_in_product(t: Task, pu: ChromaticComplex, p: ChromaticComplex, d: Mapping[str, Any], w: FacetRef) -> int | None:
    """Index in ``pu`` of the pair (carrier(w), decided output of w)."""
    i = p.facet_index(w)
    target = _carrier(p, i)
    decided = tuple(d[v] for v in p.rows[i])
    for j in range(len(pu.facets)):
        if pu.carrier[j] == target and values_of(pu, j, lambda s: s["decision"]) == decided:
            return j
    return None


# -- obstructions ---------------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    formula: Formula
    witness_world: int
    positivity_ok: bool
    false_at_witness: bool
    true_at_all_images: bool

    @property
    def verdict(self) -> str:
        if self.positivity_ok and self.false_at_witness and self.true_at_all_images:
            return "obstruction-confirmed"
        return "not-an-obstruction"

    @property
    def confirmed(self) -> bool:
        return self.verdict == "obstruction-confirmed"

    def to_json(self) -> dict:
        return {
            "formula": to_sexpr(self.formula),
            "witnessWorld": self.witness_world,
            "positivityOk": self.positivity_ok,
            "falseAtWitness": self.false_at_witness,
            "trueAtAllImages": self.true_at_all_images,
            "verdict": self.verdict,
        }


def check_obstruction(
    t: Task, p: ChromaticComplex, phi: Formula, w: FacetRef, valuation: Any = None
) -> ObstructionReport:
    """Knowledge-gain test of ``phi`` at world ``w`` of protocol complex ``p``.

    Confirmed when ``phi`` is positive, false at ``w``, and true at every
    pair (carrier(w), o) of the product update with o allowed by the task.
    """
    i = p.facet_index(w)
    target = _carrier(p, i)
    pu = product_update(t)
    table = truth_table(pu, phi)
    images = [j for j in range(len(pu.facets)) if pu.carrier[j] == target]
    return ObstructionReport(
        formula=phi,
        witness_world=i,
        positivity_ok=is_positive(phi),
        false_at_witness=not eval_formula(p, i, phi, valuation),
        true_at_all_images=bool(images) and all(table[j] for j in images),
    )
