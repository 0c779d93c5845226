"""Limit-deterministic generalized Büchi automata"""
from src.automata.ldgba import LDGBA, validate_ldgba
from src.automata.io import load_automaton, store_automaton
from src.automata.lasso import Lasso, accepting_cycle_exists, lasso_accepted, random_lasso
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
    TrueConst,
    Until,
    holds_on_lasso,
)
from src.automata.builtins import (
    FORMULAS,
    builtin_automaton,
    builtin_automaton_names,
    check_builtin,
    lasso_battery,
    recurrence_automaton,
)
from src.automata.degeneralize import degeneralize

__all__ = [
    "LDGBA",
    "validate_ldgba",
    "load_automaton",
    "store_automaton",
    "Lasso",
    "accepting_cycle_exists",
    "lasso_accepted",
    "random_lasso",
    "Always",
    "And",
    "Eventually",
    "Formula",
    "Implies",
    "Next",
    "Not",
    "Or",
    "Prop",
    "TrueConst",
    "Until",
    "holds_on_lasso",
    "FORMULAS",
    "builtin_automaton",
    "builtin_automaton_names",
    "check_builtin",
    "lasso_battery",
    "recurrence_automaton",
    "degeneralize",
]
