"""Concrete decision rules, emitted as decision maps over protocol complexes."""

from __future__ import annotations

from typing import Any

from .communication import LocalState, make_model, one_round
from .complex import ChromaticComplex
from .errors import NotOneRoundUB, ShapeMismatch
from .logic import Formula, cd_not_all, truth_table
from .tasks import DecisionMap, input_complex_of

ALGORITHMS = ("courteous", "knowledge-threshold", "tas-two-round")


def _first_round_view(state: Any) -> dict[str, Any]:
    if not isinstance(state, LocalState) or state.round != 1:
        raise NotOneRoundUB(f"expected a one-round state, got {state}")
    return {s: st.input for s, st in state.view.items()}


def courteous_decision(agent: str, view: dict[str, int]) -> int:
    """Decide from the inputs seen (own included) after one broadcast round."""
    own = view[agent]
    vals = list(view.values())
    if len(set(vals)) == 1:
        return vals[0]
    if len(vals) == 2:
        return 1 - own
    if vals.count(0) > vals.count(1):
        return 0
    return 1 - own


def courteous_map(p: ChromaticComplex) -> DecisionMap:
    if len(p.agents) != 3:
        raise NotOneRoundUB("the courteous rule is defined for three agents")
    return {vid: courteous_decision(v.color, _first_round_view(v.state)) for vid, v in p.vertices.items()}


def knowledge_threshold_map(p: ChromaticComplex, phi: Formula, valuation: Any = None) -> DecisionMap:
    """Decide 0 when the vertex's agent knows ``phi`` (true on the vertex's whole star), else 1."""
    table = truth_table(p, phi, valuation)
    return {vid: 0 if all(table[i] for i in p.star[vid]) else 1 for vid in p.vertices}


def tas_loser_qualifies(agent: str, state: LocalState) -> bool:
    """Input 1, lost the test-and-set, and read a 0 and a 1 from the two other agents.

    Only a loser reads other agents, so hearing from both others implies losing.
    """
    if not isinstance(state, LocalState) or state.round != 1:
        return False
    others = [st.input for s, st in state.view.items() if s != state.agent]
    return state.input == 1 and len(others) == 2 and set(others) == {0, 1}


QUALIFIERS = {"tas-loser": tas_loser_qualifies}


def tas_two_round_map(
    p2: ChromaticComplex, p1: ChromaticComplex | None = None, phi: Formula | None = None
) -> DecisionMap:
    """Decisions for the test-and-set protocol with an extra write/read among
    qualifying losers.

    Round-1 vertices decide by the knowledge-threshold rule on the one-round
    complex ``p1`` (rebuilt from the carriers when omitted). A qualifying
    loser decides 0 if its extra read returned another agent's message, else 1.
    """
    if p1 is None:
        p1 = one_round(input_complex_of(p2), make_model("tas", p2.agents))
    first = knowledge_threshold_map(p1, phi or cd_not_all(p2.agents, 1))
    decisions = {}
    for vid, v in p2.vertices.items():
        st = v.state
        if not isinstance(st, LocalState) or st.round not in (1, 2):
            raise ShapeMismatch(f"vertex {vid} is not a one- or two-round state")
        if st.round == 1:
            if tas_loser_qualifies(v.color, st):
                decisions[vid] = 1
            elif vid in first:
                decisions[vid] = first[vid]
            else:
                raise ShapeMismatch(f"vertex {vid} does not occur in the one-round complex")
        else:
            if not tas_loser_qualifies(v.color, st.previous):
                raise ShapeMismatch(f"vertex {vid} took an extra round without qualifying")
            decisions[vid] = 0 if len(st.senders) >= 2 else 1
    return decisions
