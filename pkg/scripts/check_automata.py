#!/usr/bin/env python3
"""
Script to cross-check the built-in automata against their formulas
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.automata import (  # noqa: E402
    builtin_automaton,
    builtin_automaton_names,
    check_builtin,
    degeneralize,
    lasso_accepted,
    lasso_battery,
)
from src.embedding import FrontierMode, embedded_lasso_accepted  # noqa: E402

COUNT = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
SEED = 2024


def check(name: str) -> bool:
    """Formula, automaton, every frontier mode and the degeneralized automaton must agree"""
    automaton = builtin_automaton(name)
    baseline = degeneralize(automaton)
    battery = lasso_battery(name, COUNT, seed=SEED)

    failures = len(check_builtin(name, battery))
    for w in battery:
        accepted = lasso_accepted(automaton, w)
        if lasso_accepted(baseline, w) != accepted:
            failures += 1
        for mode in FrontierMode:
            if embedded_lasso_accepted(automaton, w, mode) != accepted:
                failures += 1

    status = "OK" if failures == 0 else f"{failures} mismatch(es)"
    print(f"  {name:<12} {len(automaton.states):>3} states  {automaton.num_sets} set(s)  {status}")
    return failures == 0


if __name__ == "__main__":
    print("=" * 50)
    print(f"Automaton battery ({COUNT} lassos each, seed {SEED})")
    print("=" * 50)

    results = [check(name) for name in builtin_automaton_names()]
    sys.exit(0 if all(results) else 1)
