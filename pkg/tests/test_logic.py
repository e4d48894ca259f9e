import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_epistemic.complex import reachable_worlds
from simplicial_epistemic.errors import EmptyGroup, EmptyModel, FormulaSyntaxError, UnknownAgent
from simplicial_epistemic.logic import (
    CD,
    DEFAULT_VALUATION,
    And,
    Atom,
    C,
    D,
    Implies,
    K,
    Not,
    Or,
    Top,
    all_value,
    cd_not_all,
    eval_formula,
    is_positive,
    nnf,
    pair_knowledge_obstruction,
    parse_formula,
    public_announce,
    to_sexpr,
    truth_table,
)
from simplicial_epistemic.muddy import (
    MUDDY_VALUATION,
    at_least_one_muddy,
    muddy,
    muddy_children_complex,
    nobody_knows,
    world_name,
)

from conftest import AGENTS, ALL_ONE, ALL_ZERO
from oracles import naive_eval
from strategies import formulas, groups

P = Atom("a", "input", 1)


class OnlyAtSecondWorld:
    """``p`` is true exactly at the world {a1, b1, c2}."""

    def holds(self, c, w, atom):
        return c.facets[w] == frozenset({"a1", "b1", "c2"})


class TestParser:
    def test_knowledge_atom(self):
        assert parse_formula("(K a (= input a 1))") == K("a", Atom("a", "input", 1))

    def test_cd_pairs_formula(self):
        text = "(CD ((a b)(a c)(b c)) (not (and (= input a 1)(= input b 1)(= input c 1))))"
        assert parse_formula(text) == cd_not_all(AGENTS, 1)

    @pytest.mark.parametrize("text", ["(K a", "(K a (= input a 1)) x", "(frob a true)", "(= colour a 1)", "(K a ~)"])
    def test_syntax_errors(self, text):
        with pytest.raises(SyntaxError) as err:
            parse_formula(text)
        assert isinstance(err.value, FormulaSyntaxError)
        assert err.value.position >= 0

    def test_position_points_at_problem(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula("(and true (bogus))")
        assert err.value.position == 11

    def test_unknown_agent(self):
        with pytest.raises(UnknownAgent):
            parse_formula("(K z true)", AGENTS)

    def test_empty_group(self):
        with pytest.raises(EmptyGroup):
            parse_formula("(C () true)")
        with pytest.raises(EmptyGroup):
            parse_formula("(CD () true)")

    def test_decision_atoms_and_constants(self):
        assert parse_formula("(or true false (= decision b 0))") == Or(
            (Top(), parse_formula("false"), Atom("b", "decision", 0))
        )

    @settings(max_examples=200, deadline=None)
    @given(formulas)
    def test_print_parse_round_trip(self, phi):
        text = to_sexpr(phi)
        again = parse_formula(text)
        assert to_sexpr(again) == text


class TestPositivity:
    def test_bundled_obstructions_positive(self):
        assert is_positive(cd_not_all(AGENTS, 1))
        assert is_positive(pair_knowledge_obstruction(AGENTS))

    def test_negated_knowledge(self):
        assert not is_positive(Not(K("a", P)))

    def test_implication_antecedent_is_negated(self):
        assert not is_positive(Implies(K("a", P), P))
        assert is_positive(Implies(P, K("a", P)))

    def test_double_negation(self):
        assert is_positive(Not(Not(C(("a", "b"), P))))

    @given(formulas)
    def test_nnf_has_no_implications(self, phi):
        assert "implies" not in to_sexpr(nnf(phi))


class TestSmallModel:
    def test_distributed_beats_individual(self, example_frame_complex):
        c, v = example_frame_complex, OnlyAtSecondWorld()
        w2 = ["a1", "b1", "c2"]
        assert eval_formula(c, w2, D(("b", "c"), P), v)
        assert not eval_formula(c, w2, K("b", P), v)
        assert not eval_formula(c, w2, K("c", P), v)

    def test_matches_naive(self, example_frame_complex):
        c, v = example_frame_complex, OnlyAtSecondWorld()
        for phi in [K("a", P), D(("a", "b"), P), C(("a", "c"), P), CD((("a", "b"), ("b", "c")), P)]:
            for i, f in enumerate(c.facets):
                assert eval_formula(c, i, phi, v) == naive_eval(c, f, phi, v.holds)


class TestProtocolComplexes:
    def test_cd_not_all_ones_false_everywhere_on_is(self, protocols, cd_not_all_ones):
        assert not any(truth_table(protocols["is"], cd_not_all_ones))

    def test_cd_not_all_ones_on_ub(self, protocols, cd_not_all_ones):
        p = protocols["ub"]
        table = truth_table(p, cd_not_all_ones)
        for i, carrier in enumerate(p.carrier):
            if carrier == ALL_ZERO:
                assert table[i]
            if carrier == ALL_ONE:
                assert not table[i]

    @settings(max_examples=60, deadline=None)
    @given(formulas, st.data())
    def test_agrees_with_naive(self, protocols, phi, data):
        p = protocols[data.draw(st.sampled_from(["ub", "tas"]))]
        i = data.draw(st.integers(0, len(p.facets) - 1))
        assert eval_formula(p, i, phi) == naive_eval(p, p.facets[i], phi, DEFAULT_VALUATION.holds)

    @settings(max_examples=80, deadline=None)
    @given(formulas, st.sampled_from(AGENTS), groups)
    def test_interdefinability(self, protocols, phi, a, grp):
        p = protocols["tas"]
        k = truth_table(p, K(a, phi))
        assert k == truth_table(p, D((a,), phi)) == truth_table(p, CD(((a,),), phi))
        assert truth_table(p, C(grp, phi)) == truth_table(p, CD(tuple((x,) for x in grp), phi))
        assert truth_table(p, D(grp, phi)) == truth_table(p, CD((grp,), phi))

    @settings(max_examples=40, deadline=None)
    @given(formulas, groups, groups)
    def test_monotone_and_factive(self, protocols, phi, g1, g2):
        p = protocols["ub"]
        inner = truth_table(p, phi)
        small, big = truth_table(p, D(g1, phi)), truth_table(p, D(tuple(sorted(set(g1) | set(g2))), phi))
        assert all(b for s, b in zip(small, big) if s)
        assert all(t for s, t in zip(small, inner) if s)

    @settings(max_examples=30, deadline=None)
    @given(formulas, st.lists(groups, min_size=1, max_size=3, unique=True), st.data())
    def test_cd_is_constant_on_components(self, protocols, phi, family, data):
        p = protocols["tas"]
        table = truth_table(p, CD(tuple(family), phi))
        i = data.draw(st.integers(0, len(p.facets) - 1))
        if table[i]:
            for f in reachable_worlds(p, i, family):
                assert table[p.facet_index(f)]


class TestMuddy:
    def test_pink_knows_after_announcement(self):
        c = public_announce(muddy_children_complex(), at_least_one_muddy(AGENTS_M), MUDDY_VALUATION)
        w = next(i for i in range(len(c.facets)) if world_name(c, i) == "100")
        assert eval_formula(c, w, K("pink", muddy("pink")), MUDDY_VALUATION)

    def test_common_knowledge_arises_from_announcement(self):
        c = muddy_children_complex()
        phi = C(AGENTS_M, at_least_one_muddy(AGENTS_M))
        w = next(i for i in range(len(c.facets)) if world_name(c, i) == "111")
        assert not eval_formula(c, w, phi, MUDDY_VALUATION)
        after = public_announce(c, at_least_one_muddy(AGENTS_M), MUDDY_VALUATION)
        assert all(truth_table(after, phi, MUDDY_VALUATION))

    def test_announcement_counts(self):
        c = muddy_children_complex()
        c7 = public_announce(c, at_least_one_muddy(AGENTS_M), MUDDY_VALUATION)
        assert len(c7.facets) == 7
        c4 = public_announce(c7, nobody_knows(AGENTS_M), MUDDY_VALUATION)
        assert sorted(world_name(c4, i) for i in range(4)) == ["011", "101", "110", "111"]
        assert public_announce(c, Top(), MUDDY_VALUATION) == c

    def test_empty_model(self):
        with pytest.raises(EmptyModel):
            public_announce(muddy_children_complex(), parse_formula("false"))


AGENTS_M = ("pink", "blue", "yellow")


def test_announcement_idempotent_on_corpus(protocols, cd_not_all_ones):
    for p in protocols.values():
        try:
            once = public_announce(p, cd_not_all_ones)
        except EmptyModel:
            continue
        if all(truth_table(once, cd_not_all_ones)):
            assert public_announce(once, cd_not_all_ones) == once


def test_announcement_keeps_carrier(protocols):
    p = protocols["ub"]
    kept = public_announce(p, all_value(AGENTS, 0))
    assert set(kept.carrier) == {ALL_ZERO}
    assert len(kept.facets) == 7


def test_unknown_agent_in_evaluation(protocols):
    with pytest.raises(UnknownAgent):
        truth_table(protocols["ub"], Atom("z", "input", 0))
