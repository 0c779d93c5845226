"""
Hand-built automata for the case-study tasks

phi_e      GF r1 & GF r2
phi_case1  FG t & G !u
phi_case2  GF Base1 & GF Base2 & GF Base3 & G !Obs
phi_case3  phi_case2 & G(Sply -> X(!Sply U (Base1 | Base2 | Base3)))

The recurrence tasks use automata that remember which goal propositions the
last letter carried; a letter with a forbidden proposition drops into a
rejecting trap. For phi_e the states q0, q1, q2 and their transitions on
{r0}, {r1}, {r2} are the three-state automaton of the motivating example;
q12 only handles letters carrying both r1 and r2, which that model never
emits.

Each automaton is registered with the formula it implements so the lasso
battery can compare them (check_builtin).
"""
import logging
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from src.automata.lasso import Lasso, lasso_accepted, random_lasso
from src.automata.ldgba import LDGBA, validate_ldgba
from src.automata.ltl import (
    Always,
    And,
    Eventually,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Until,
    holds_on_lasso,
)
from src.common import AutomatonValidationError, Letter, UnknownBuiltinError, all_letters

logger = logging.getLogger(__name__)

TRAP = "trap"


def _subsets(items: Sequence[str]) -> List[FrozenSet[str]]:
    return [frozenset(c) for size in range(len(items) + 1) for c in combinations(items, size)]


def _finish(automaton: LDGBA) -> LDGBA:
    report = validate_ldgba(automaton)
    if not report.ok:
        raise AutomatonValidationError(report)
    return automaton


def recurrence_automaton(
    name: str,
    goals: Sequence[str],
    forbidden: Sequence[str],
    state_name: Callable[[FrozenSet[str]], str],
) -> LDGBA:
    """
    Deterministic automaton for GF g_1 & ... & GF g_k & G !forbidden

    The state after a letter is the set of goals that letter carries, so
    F_j collects the states whose set contains g_j.
    """
    props = frozenset(goals) | frozenset(forbidden)
    classes = _subsets(list(goals))
    names = {cls: state_name(cls) for cls in classes}
    states = tuple(names[cls] for cls in classes) + (TRAP,)
    transitions: Dict[Tuple[str, Letter], Tuple[str, ...]] = {}
    for letter in all_letters(props):
        target = TRAP if letter & frozenset(forbidden) else names[letter & frozenset(goals)]
        for cls in classes:
            transitions[(names[cls], letter)] = (target,)
        transitions[(TRAP, letter)] = (TRAP,)
    accepting = tuple(
        frozenset(names[cls] for cls in classes if goal in cls) for goal in goals
    )
    return _finish(
        LDGBA(
            props=props,
            states=states,
            initial=names[frozenset()],
            q_d=frozenset(states),
            q_n=frozenset(),
            transitions=transitions,
            epsilon={},
            accepting=accepting,
            name=name,
        )
    )


def phi_e() -> LDGBA:
    """
    GF r1 & GF r2 with accepting sets [{q1, q12}, {q2, q12}]

    The motivating example draws three states with F = [{q1}, {q2}]. Here a
    fourth state q12 takes the letters carrying both r1 and r2: sending them
    to q1 or q2 would reject ({r1, r2})^ω although it satisfies the formula.
    On every other letter the automaton is the three-state one.
    """
    names = {
        frozenset(): "q0",
        frozenset({"r1"}): "q1",
        frozenset({"r2"}): "q2",
        frozenset({"r1", "r2"}): "q12",
    }
    base = recurrence_automaton("phi_e", ["r1", "r2"], [], names.__getitem__)
    # r0 is read but never constrains the run
    props = base.props | {"r0"}
    transitions = {}
    for letter in all_letters(props):
        for q in base.states:
            transitions[(q, letter)] = base.successors(q, letter - {"r0"})
    states = tuple(q for q in base.states if q != TRAP)
    transitions = {key: value for key, value in transitions.items() if key[0] != TRAP}
    return _finish(
        LDGBA(
            props=props,
            states=states,
            initial="q0",
            q_d=frozenset(states),
            q_n=frozenset(),
            transitions=transitions,
            epsilon={},
            accepting=base.accepting,
            name="phi_e",
        )
    )


def _base_name(cls: FrozenSet[str]) -> str:
    if not cls:
        return "idle"
    return "".join(sorted(b.replace("Base", "B") for b in cls))


def phi_case1() -> LDGBA:
    """Wait in n0 while avoiding u, guess the point from which t holds forever"""
    props = frozenset({"t", "u"})
    transitions: Dict[Tuple[str, Letter], Tuple[str, ...]] = {}
    for letter in all_letters(props):
        if "u" not in letter:
            transitions[("n0", letter)] = ("n0",)
        transitions[("d", letter)] = ("d",) if letter == frozenset({"t"}) else (TRAP,)
        transitions[(TRAP, letter)] = (TRAP,)
    return _finish(
        LDGBA(
            props=props,
            states=("n0", "d", TRAP),
            initial="n0",
            q_d=frozenset({"d", TRAP}),
            q_n=frozenset({"n0"}),
            transitions=transitions,
            epsilon={"n0": ("d",)},
            accepting=(frozenset({"d"}),),
            name="phi_case1",
        )
    )


def phi_case2() -> LDGBA:
    return recurrence_automaton("phi_case2", ["Base1", "Base2", "Base3"], ["Obs"], _base_name)


def phi_case3() -> LDGBA:
    """phi_case2 plus an owed-base flag raised by every supply visit"""
    bases = frozenset({"Base1", "Base2", "Base3"})
    props = bases | {"Obs", "Sply"}
    classes = _subsets(sorted(bases))

    def name(cls: FrozenSet[str], owed: bool) -> str:
        return _base_name(cls) + ("/owed" if owed else "")

    states = tuple(name(cls, owed) for owed in (False, True) for cls in classes) + (TRAP,)
    transitions: Dict[Tuple[str, Letter], Tuple[str, ...]] = {}
    for letter in all_letters(props):
        transitions[(TRAP, letter)] = (TRAP,)
        visited = letter & bases
        for owed in (False, True):
            if "Obs" in letter or (owed and not visited and "Sply" in letter):
                target = TRAP
            else:
                target = name(visited, "Sply" in letter or (owed and not visited))
            for cls in classes:
                transitions[(name(cls, owed), letter)] = (target,)
    accepting = tuple(
        frozenset(name(cls, owed) for owed in (False, True) for cls in classes if base in cls)
        for base in sorted(bases)
    )
    return _finish(
        LDGBA(
            props=props,
            states=states,
            initial=name(frozenset(), False),
            q_d=frozenset(states),
            q_n=frozenset(),
            transitions=transitions,
            epsilon={},
            accepting=accepting,
            name="phi_case3",
        )
    )


def _gf(name: str) -> Formula:
    return Always(Eventually(Prop(name)))


def _conj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    formula = parts[0]
    for part in parts[1:]:
        formula = And(formula, part)
    return formula


_SURVEILLANCE = _conj([_gf("Base1"), _gf("Base2"), _gf("Base3"), Always(Not(Prop("Obs")))])
_ANY_BASE = Or(Or(Prop("Base1"), Prop("Base2")), Prop("Base3"))

FORMULAS: Dict[str, Formula] = {
    "phi_e": And(_gf("r1"), _gf("r2")),
    "phi_case1": And(Eventually(Always(Prop("t"))), Always(Not(Prop("u")))),
    "phi_case2": _SURVEILLANCE,
    "phi_case3": And(
        _SURVEILLANCE,
        Always(Implies(Prop("Sply"), Next(Until(Not(Prop("Sply")), _ANY_BASE)))),
    ),
}

_BUILTINS: Dict[str, Callable[[], LDGBA]] = {
    "phi_e": phi_e,
    "phi_case1": phi_case1,
    "phi_case2": phi_case2,
    "phi_case3": phi_case3,
}


def builtin_automaton_names() -> List[str]:
    return sorted(_BUILTINS)


def builtin_automaton(name: str) -> LDGBA:
    if name not in _BUILTINS:
        raise UnknownBuiltinError("automaton", name, _BUILTINS)
    return _BUILTINS[name]()


def check_builtin(name: str, lassos: Iterable[Lasso]) -> List[Lasso]:
    """
    Compare a built-in automaton with its formula on a battery of lassos

    Returns:
        The lassos on which automaton acceptance and formula semantics disagree
    """
    automaton = builtin_automaton(name)
    formula = FORMULAS[name]
    mismatches = [w for w in lassos if lasso_accepted(automaton, w) != holds_on_lasso(formula, w)]
    if mismatches:
        logger.warning(f"Automaton '{name}' disagrees with {formula} on {len(mismatches)} lasso(s)")
    return mismatches


def lasso_battery(name: str, count: int, seed: int = 0) -> List[Lasso]:
    """Random lassos over the propositions of a built-in automaton"""
    rng = np.random.default_rng(seed)
    props = builtin_automaton(name).props
    return [random_lasso(rng, props) for _ in range(count)]
