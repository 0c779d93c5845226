"""Tests for LDGBA structure, documents, lasso acceptance and the built-in tasks"""
import json
from dataclasses import replace
from pathlib import Path

import pytest

from src.automata import (
    FORMULAS,
    Always,
    And,
    Eventually,
    Lasso,
    Next,
    Not,
    Prop,
    Until,
    builtin_automaton,
    builtin_automaton_names,
    check_builtin,
    degeneralize,
    holds_on_lasso,
    lasso_accepted,
    lasso_battery,
    load_automaton,
    store_automaton,
    validate_ldgba,
)
from src.common import AutomatonValidationError, DocumentSchemaError, UnknownBuiltinError, UnknownPropositionError
from src.embedding import embedded_lasso_accepted

DATA = Path(__file__).resolve().parent.parent / "data"


def lasso(prefix, cycle):
    return Lasso.of(prefix, cycle)


def test_builtins_validate():
    """Every built-in automaton is limit-deterministic"""
    for name in builtin_automaton_names():
        assert validate_ldgba(builtin_automaton(name)).ok, name


def test_phi_e_matches_motivating_automaton():
    """q1 on r1 and q2 on r2 from every state; two accepting sets"""
    a = builtin_automaton("phi_e")

    assert a.num_sets == 2
    for q in ("q0", "q1", "q2"):
        assert a.successors(q, frozenset({"r1"})) == ("q1",)
        assert a.successors(q, frozenset({"r2"})) == ("q2",)
        assert a.successors(q, frozenset({"r0"})) == ("q0",)
    assert a.accepting_indices("q1") == frozenset({0})
    assert a.accepting_indices("q2") == frozenset({1})


def test_phi_e_document_matches_builtin():
    """data/automata/phi_e.json describes the built-in automaton"""
    with open(DATA / "automata" / "phi_e.json", encoding="utf-8") as handle:
        loaded = load_automaton(json.load(handle))

    assert loaded == builtin_automaton("phi_e")


@pytest.mark.parametrize("name", ["phi_e", "phi_case1", "phi_case2", "phi_case3"])
def test_store_and_load_preserve_automaton(name):
    """Stored documents load back into the same automaton"""
    a = builtin_automaton(name)

    assert load_automaton(json.loads(json.dumps(store_automaton(a)))) == a


def test_load_rejects_epsilon_from_deterministic_state():
    """ε-moves may only leave Q_N"""
    document = store_automaton(builtin_automaton("phi_e"))
    document["epsilon"] = [{"from": "q0", "to": "q1"}]

    with pytest.raises(AutomatonValidationError) as info:
        load_automaton(document)
    assert "epsilon-from-deterministic" in info.value.report.rules()


def test_load_rejects_unknown_proposition():
    """Edge letters must use declared propositions"""
    document = store_automaton(builtin_automaton("phi_e"))
    document["transitions"][0]["letters"] = [["r7"]]

    with pytest.raises(DocumentSchemaError):
        load_automaton(document)


def test_validation_reports_missing_letter():
    """A deterministic state without a successor on some letter is reported"""
    a = builtin_automaton("phi_e")
    transitions = {k: v for k, v in a.transitions.items() if k != ("q1", frozenset({"r2"}))}

    report = validate_ldgba(replace(a, transitions=transitions))

    assert "deterministic-not-total" in report.rules()


def test_validation_reports_accepting_outside_deterministic_part():
    """Accepting sets must live in Q_D"""
    a = builtin_automaton("phi_case1")

    report = validate_ldgba(replace(a, accepting=(frozenset({"n0"}),)))

    assert "accepting-outside-deterministic" in report.rules()


@pytest.mark.parametrize(
    "prefix,cycle,expected",
    [
        ([], [["r1"], ["r2"]], True),
        ([["r0"]], [["r1"], ["r0"], ["r2"]], True),
        ([["r1"], ["r2"]], [["r1"]], False),
        ([], [["r0"]], False),
    ],
)
def test_phi_e_lassos(prefix, cycle, expected):
    """GF r1 & GF r2 on hand-picked lassos"""
    a = builtin_automaton("phi_e")
    w = lasso(prefix, cycle)

    assert lasso_accepted(a, w) is expected
    assert holds_on_lasso(FORMULAS["phi_e"], w) is expected


@pytest.mark.parametrize(
    "prefix,cycle,expected",
    [
        ([[], []], [["t"]], True),
        ([["u"]], [["t"]], False),
        ([], [["t"], []], False),
        ([], [["t"]], True),
    ],
)
def test_phi_case1_lassos(prefix, cycle, expected):
    """FG t & G !u needs the ε-guess into d"""
    a = builtin_automaton("phi_case1")

    assert lasso_accepted(a, lasso(prefix, cycle)) is expected


def test_phi_case3_supply_obligation():
    """A second supply visit before any base violates the obligation"""
    a = builtin_automaton("phi_case3")
    good = lasso([], [["Base1"], ["Sply"], [], ["Base2"], ["Base3"]])
    bad = lasso([], [["Base1"], ["Sply"], ["Sply"], ["Base2"], ["Base3"]])

    assert lasso_accepted(a, good)
    assert not lasso_accepted(a, bad)
    assert holds_on_lasso(FORMULAS["phi_case3"], good)
    assert not holds_on_lasso(FORMULAS["phi_case3"], bad)


def test_lasso_rejects_unknown_proposition():
    """Letters outside the alphabet raise"""
    with pytest.raises(UnknownPropositionError):
        lasso_accepted(builtin_automaton("phi_e"), lasso([], [["zz"]]))


def test_lasso_rotation_keeps_word():
    """Rotating or unrolling a lasso does not change the verdict"""
    a = builtin_automaton("phi_case2")
    w = lasso([[]], [["Base1"], ["Base2"], [], ["Base3"]])

    assert lasso_accepted(a, w)
    assert lasso_accepted(a, w.rotated(2))
    assert lasso_accepted(a, w.unrolled(3))
    assert w.word(6) == w.rotated(2).word(6)


def test_ltl_operators():
    """Next and Until on a small lasso"""
    w = lasso([["a"]], [["b"], []])

    assert holds_on_lasso(Prop("a"), w)
    assert holds_on_lasso(Next(Prop("b")), w)
    assert holds_on_lasso(Until(Prop("a"), Prop("b")), w)
    assert holds_on_lasso(Always(Eventually(Prop("b"))), w)
    assert not holds_on_lasso(Eventually(Always(Prop("b"))), w)
    assert holds_on_lasso(And(Prop("a"), Not(Prop("b"))), w)


def test_degeneralize_single_set():
    """The counter construction leaves one accepting set and validates"""
    a = builtin_automaton("phi_e")
    d = degeneralize(a)

    assert d.num_sets == 1
    assert d.initial == "q0#0"
    assert d.name == "phi_e-ldba"
    assert validate_ldgba(d).ok
    assert all("#" in q for q in d.states)


def test_degeneralize_keeps_epsilon_structure():
    """ε-moves of Q_N survive degeneralization"""
    d = degeneralize(builtin_automaton("phi_case1"))

    assert d.epsilon_successors("n0#0") == ("d#0",)
    assert "n0#0" in d.q_n


@pytest.mark.parametrize("name", ["phi_e", "phi_case1", "phi_case2", "phi_case3"])
def test_language_equivalence_battery(name):
    """Automaton, formula, embedded automaton and degeneralized automaton agree"""
    a = builtin_automaton(name)
    d = degeneralize(a)
    battery = lasso_battery(name, 150, seed=11)

    assert check_builtin(name, battery) == []
    for w in battery:
        base = lasso_accepted(a, w)
        assert embedded_lasso_accepted(a, w) is base, str(w)
        assert lasso_accepted(d, w) is base, str(w)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["phi_e", "phi_case1", "phi_case2", "phi_case3"])
def test_language_equivalence_full_battery(name):
    """1000 random lassos per built-in automaton, zero mismatches"""
    a = builtin_automaton(name)
    d = degeneralize(a)
    battery = lasso_battery(name, 1000, seed=2024)

    assert check_builtin(name, battery) == []
    mismatches = [
        w for w in battery
        if not lasso_accepted(a, w) == embedded_lasso_accepted(a, w) == lasso_accepted(d, w)
    ]
    assert mismatches == []


def test_unknown_builtin_automaton():
    """Unregistered names raise UnknownBuiltinError"""
    with pytest.raises(UnknownBuiltinError):
        builtin_automaton("phi_missing")


def test_phi_e_keeps_three_state_core():
    """Single-goal letters follow the three-state drawing; q12 only serves {r1, r2}"""
    a = builtin_automaton("phi_e")

    assert set(a.states) == {"q0", "q1", "q2", "q12"}
    assert a.accepting == (frozenset({"q1", "q12"}), frozenset({"q2", "q12"}))
    for q in ("q0", "q1", "q2"):
        assert a.successors(q, frozenset({"r1"})) == ("q1",)
        assert a.successors(q, frozenset({"r2"})) == ("q2",)
        assert a.successors(q, frozenset({"r0"})) == ("q0",)
    assert lasso_accepted(a, Lasso.of([], [["r1", "r2"]]))
    assert not lasso_accepted(a, Lasso.of([], [["r1"]]))


if __name__ == "__main__":
    pytest.main([__file__])
