"""Epistemic formulas over chromatic complexes.

Formulas are small frozen dataclasses. Truth is computed for all worlds of a
complex at once (:func:`truth_table`), which keeps the group-knowledge
operators linear in the size of the complex.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Union

from .complex import (
    ChromaticComplex,
    FacetRef,
    Group,
    GroupFamily,
    normalize_family,
    normalize_group,
)
from .errors import EmptyGroup, EmptyModel, FormulaSyntaxError, UnknownAgent

ATOM_KEYS = ("input", "decision")


@dataclass(frozen=True)
class Atom:
    agent: str
    key: str
    value: Any


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    subs: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    subs: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class K:
    agent: str
    sub: "Formula"


@dataclass(frozen=True)
class C:
    group: Group
    sub: "Formula"


@dataclass(frozen=True)
class D:
    group: Group
    sub: "Formula"


@dataclass(frozen=True)
class CD:
    family: GroupFamily
    sub: "Formula"


Formula = Union[Atom, Top, Bottom, Not, And, Or, Implies, K, C, D, CD]
MODALS = (K, C, D, CD)


# -- constructors ---------------------------------------------------------------------


def conj(*subs: Formula) -> And:
    return And(tuple(subs))


def disj(*subs: Formula) -> Or:
    return Or(tuple(subs))


def common(group: Iterable[str], sub: Formula) -> C:
    return C(normalize_group(group), sub)


def distributed(group: Iterable[str], sub: Formula) -> D:
    return D(normalize_group(group), sub)


def common_distributed(family: Iterable[Iterable[str]], sub: Formula) -> CD:
    return CD(normalize_family(family), sub)


def all_value(agents: Sequence[str], value: Any, key: str = "input") -> And:
    """"Every agent has ``key`` equal to ``value``" (all_0 / all_1)."""
    return And(tuple(Atom(a, key, value) for a in agents))


def pairs(agents: Sequence[str]) -> GroupFamily:
    return normalize_family(combinations(agents, 2))


def cd_not_all(agents: Sequence[str], value: Any) -> CD:
    """CD over all pairs that not every input equals ``value``."""
    return CD(pairs(agents), Not(all_value(agents, value)))


def pair_knowledge_obstruction(agents: Sequence[str], value: Any = 1) -> Formula:
    """Either ``cd_not_all(1 - value)`` holds, or some two agents know ``cd_not_all(value)``."""
    phi1 = cd_not_all(agents, value)
    phi0 = cd_not_all(agents, 1 - value)
    couples = [And((K(x, phi1), K(y, phi1))) for x, y in combinations(agents, 2)]
    return Or((phi0, *couples))


# -- printing and parsing ------------------------------------------------------------


def to_sexpr(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return f"(= {phi.key} {phi.agent} {phi.value})"
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bottom):
        return "false"
    if isinstance(phi, Not):
        return f"(not {to_sexpr(phi.sub)})"
    if isinstance(phi, And):
        return "(and " + " ".join(map(to_sexpr, phi.subs)) + ")"
    if isinstance(phi, Or):
        return "(or " + " ".join(map(to_sexpr, phi.subs)) + ")"
    if isinstance(phi, Implies):
        return f"(implies {to_sexpr(phi.left)} {to_sexpr(phi.right)})"
    if isinstance(phi, K):
        return f"(K {phi.agent} {to_sexpr(phi.sub)})"
    if isinstance(phi, (C, D)):
        op = "C" if isinstance(phi, C) else "D"
        return f"({op} ({' '.join(phi.group)}) {to_sexpr(phi.sub)})"
    if isinstance(phi, CD):
        fam = "".join(f"({' '.join(g)})" for g in phi.family)
        return f"(CD ({fam}) {to_sexpr(phi.sub)})"
    raise TypeError(f"not a formula: {phi!r}")


_LEX = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _LEX.match(text, pos)
        if m is None or m.lastindex is None:
            break
        tokens.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    if text[pos:].strip():
        raise FormulaSyntaxError("unexpected character", pos)
    return tokens


def parse_formula(text: str, agents: Sequence[str] | None = None) -> Formula:
    """Parse the s-expression syntax produced by :func:`to_sexpr`.

    When ``agents`` is given, agent names are checked against it.
    """
    tokens = _tokenize(text)
    i = 0

    def peek() -> tuple[str, int]:
        if i >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input", len(text))
        return tokens[i]

    def take(expected: str | None = None) -> tuple[str, int]:
        nonlocal i
        tok = peek()
        if expected is not None and tok[0] != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, got {tok[0]!r}", tok[1])
        i += 1
        return tok

    def agent() -> str:
        name, at = take()
        if name in "()":
            raise FormulaSyntaxError(f"expected agent name, got {name!r}", at)
        if agents is not None and name not in agents:
            raise UnknownAgent(f"unknown agent {name!r} at position {at}")
        return name

    def group() -> Group:
        _, at = take("(")
        members = []
        while peek()[0] != ")":
            members.append(agent())
        take(")")
        if not members:
            raise EmptyGroup(f"empty agent group at position {at}")
        return normalize_group(members)

    def family() -> GroupFamily:
        _, at = take("(")
        groups = []
        while peek()[0] != ")":
            groups.append(group())
        take(")")
        if not groups:
            raise EmptyGroup(f"empty group family at position {at}")
        return normalize_family(groups)

    def value() -> Any:
        raw, at = take()
        if raw in "()":
            raise FormulaSyntaxError("expected a value", at)
        return int(raw) if re.fullmatch(r"-?\d+", raw) else raw

    def form() -> Formula:
        tok, at = take()
        if tok == "true":
            return Top()
        if tok == "false":
            return Bottom()
        if tok != "(":
            raise FormulaSyntaxError(f"unexpected token {tok!r}", at)
        op, op_at = take()
        if op == "=":
            key, key_at = take()
            if key not in ATOM_KEYS:
                raise FormulaSyntaxError(f"atom key must be one of {ATOM_KEYS}", key_at)
            result: Formula = Atom(agent(), key, value())
        elif op == "not":
            result = Not(form())
        elif op in ("and", "or"):
            subs = [form()]
            while peek()[0] != ")":
                subs.append(form())
            result = And(tuple(subs)) if op == "and" else Or(tuple(subs))
        elif op == "implies":
            result = Implies(form(), form())
        elif op == "K":
            result = K(agent(), form())
        elif op == "C":
            result = C(group(), form())
        elif op == "D":
            result = D(group(), form())
        elif op == "CD":
            result = CD(family(), form())
        else:
            raise FormulaSyntaxError(f"unknown operator {op!r}", op_at)
        take(")")
        return result

    phi = form()
    if i != len(tokens):
        raise FormulaSyntaxError("trailing input", tokens[i][1])
    return phi


# -- syntactic properties ------------------------------------------------------------


def nnf(phi: Formula, negate: bool = False) -> Formula:
    """Negation normal form; negations remain only directly above atoms or modalities."""
    if isinstance(phi, Not):
        return nnf(phi.sub, not negate)
    if isinstance(phi, Implies):
        return nnf(Or((Not(phi.left), phi.right)), negate)
    if isinstance(phi, (And, Or)):
        flip = isinstance(phi, And) == negate
        subs = tuple(nnf(s, negate) for s in phi.subs)
        return Or(subs) if flip else And(subs)
    if isinstance(phi, Top):
        return Bottom() if negate else phi
    if isinstance(phi, Bottom):
        return Top() if negate else phi
    if isinstance(phi, Atom):
        return Not(phi) if negate else phi
    inner = type(phi)(*_fields(phi)[:-1], nnf(phi.sub))
    return Not(inner) if negate else inner


def _fields(phi: Formula) -> tuple:
    if isinstance(phi, K):
        return (phi.agent, phi.sub)
    if isinstance(phi, (C, D)):
        return (phi.group, phi.sub)
    if isinstance(phi, CD):
        return (phi.family, phi.sub)
    raise TypeError(phi)


def is_positive(phi: Formula) -> bool:
    """True iff no knowledge operator sits under a negation once in NNF."""

    def ok(f: Formula) -> bool:
        if isinstance(f, Not):
            return not isinstance(f.sub, MODALS) and ok(f.sub)
        if isinstance(f, (And, Or)):
            return all(ok(s) for s in f.subs)
        if isinstance(f, MODALS):
            return ok(f.sub)
        return True

    return ok(nnf(phi))


def agents_of(phi: Formula) -> set[str]:
    if isinstance(phi, Atom):
        return {phi.agent}
    if isinstance(phi, (Top, Bottom)):
        return set()
    if isinstance(phi, Not):
        return agents_of(phi.sub)
    if isinstance(phi, (And, Or)):
        return set().union(*(agents_of(s) for s in phi.subs))
    if isinstance(phi, Implies):
        return agents_of(phi.left) | agents_of(phi.right)
    if isinstance(phi, K):
        return {phi.agent} | agents_of(phi.sub)
    if isinstance(phi, (C, D)):
        return set(phi.group) | agents_of(phi.sub)
    return set().union(*map(set, phi.family)) | agents_of(phi.sub)


# -- valuations -----------------------------------------------------------------------


def state_entry(state: Any, key: str) -> Any:
    entry = getattr(state, "entry", None)
    if callable(entry):
        return entry(key)
    if isinstance(state, Mapping):
        return state.get(key)
    return None


class StateValuation:
    """Atom (agent, key, value) holds at a world iff the agent's own vertex
    there has ``key`` equal to ``value``."""

    def value(self, c: ChromaticComplex, w: int, agent: str, key: str) -> Any:
        return state_entry(c.vertex_of(w, agent).state, key)

    def holds(self, c: ChromaticComplex, w: int, atom: Atom) -> bool:
        return self.value(c, w, atom.agent, atom.key) == atom.value


DEFAULT_VALUATION = StateValuation()


# -- semantics ------------------------------------------------------------------------


def truth_table(
    c: ChromaticComplex, phi: Formula, valuation: Any = None, _memo: dict | None = None
) -> tuple[bool, ...]:
    """Truth value of ``phi`` at every facet of ``c``, in facet order."""
    val = valuation or DEFAULT_VALUATION
    memo = {} if _memo is None else _memo
    if phi in memo:
        return memo[phi]
    n = len(c.facets)
    if isinstance(phi, Atom):
        if phi.agent not in c.agents:
            raise UnknownAgent(f"unknown agent {phi.agent!r}")
        out = tuple(val.holds(c, i, phi) for i in range(n))
    elif isinstance(phi, Top):
        out = (True,) * n
    elif isinstance(phi, Bottom):
        out = (False,) * n
    elif isinstance(phi, Not):
        out = tuple(not t for t in truth_table(c, phi.sub, val, memo))
    elif isinstance(phi, And):
        cols = [truth_table(c, s, val, memo) for s in phi.subs]
        out = tuple(all(col[i] for col in cols) for i in range(n))
    elif isinstance(phi, Or):
        cols = [truth_table(c, s, val, memo) for s in phi.subs]
        out = tuple(any(col[i] for col in cols) for i in range(n))
    elif isinstance(phi, Implies):
        left = truth_table(c, phi.left, val, memo)
        right = truth_table(c, phi.right, val, memo)
        out = tuple((not l) or r for l, r in zip(left, right))
    elif isinstance(phi, K):
        out = _group_knowledge(c, normalize_group([phi.agent], c.agents), truth_table(c, phi.sub, val, memo))
    elif isinstance(phi, D):
        out = _group_knowledge(c, normalize_group(phi.group, c.agents), truth_table(c, phi.sub, val, memo))
    elif isinstance(phi, C):
        family = [(a,) for a in normalize_group(phi.group, c.agents)]
        out = _component_knowledge(c, family, truth_table(c, phi.sub, val, memo))
    elif isinstance(phi, CD):
        out = _component_knowledge(c, phi.family, truth_table(c, phi.sub, val, memo))
    else:
        raise TypeError(f"not a formula: {phi!r}")
    memo[phi] = out
    return out


def _group_knowledge(c: ChromaticComplex, group: Group, inner: Sequence[bool]) -> tuple[bool, ...]:
    table = c._face_table(group)
    pos = [c.agents.index(a) for a in group]
    verdict = {face: all(inner[j] for j in members) for face, members in table.items()}
    return tuple(verdict[tuple(row[p] for p in pos)] for row in c.rows)


def _component_knowledge(
    c: ChromaticComplex, family: Iterable[Iterable[str]], inner: Sequence[bool]
) -> tuple[bool, ...]:
    labels = c.components(normalize_family(family, c.agents))
    bad = {labels[i] for i, t in enumerate(inner) if not t}
    return tuple(label not in bad for label in labels)


def eval_formula(c: ChromaticComplex, w: FacetRef, phi: Formula, valuation: Any = None) -> bool:
    """Truth of ``phi`` at world ``w`` of ``c``."""
    i = c.facet_index(w)
    return truth_table(c, phi, valuation)[i]


def public_announce(c: ChromaticComplex, phi: Formula, valuation: Any = None) -> ChromaticComplex:
    """Restrict ``c`` to the worlds where ``phi`` holds."""
    table = truth_table(c, phi, valuation)
    keep = [i for i, t in enumerate(table) if t]
    if not keep:
        raise EmptyModel(f"no world satisfies {to_sexpr(phi)}")
    facets = [c.facets[i] for i in keep]
    used = set().union(*facets)
    carrier = None if c.carrier is None else {c.facets[i]: c.carrier[i] for i in keep}
    return ChromaticComplex(c.agents, [v for v in c.vertices.values() if v.id in used], facets, carrier)
