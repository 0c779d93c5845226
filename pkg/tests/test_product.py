"""Tests for the EP-MDP environment and its explicit enumeration"""
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from src.automata import builtin_automaton
from src.common import StateBudgetExceededError, UnavailableActionError
from src.embedding import FrontierMode, FrontierSet
from src.mdp import GridSpec, build_grid_env, builtin_model
from src.product import (
    HALT,
    REJECTING_SINK,
    EPMDPEnvironment,
    ProductAction,
    ProductState,
    enumerate_product,
    validate_product,
)

R0, R1, R2 = frozenset({"r0"}), frozenset({"r1"}), frozenset({"r2"})


def fig1_env(mode=FrontierMode.IMMEDIATE):
    return EPMDPEnvironment(builtin_model("fig1"), builtin_automaton("phi_e"), mode)


def fig2_env():
    return EPMDPEnvironment(builtin_model("fig2"), builtin_automaton("phi_case1"))


def state(s, l, q, *pending):
    return ProductState(s, l, q, FrontierSet.of(pending))


def test_initial_state():
    """x0 pairs s0 and its label with q0 and the full frontier"""
    x0 = fig1_env().initial_state()

    assert x0 == state("s0", R0, "q0", 0, 1)
    assert x0.flags == frozenset()
    assert x0.encode() == "s0|{r0}|q0|{0,1}"


def test_available_actions_in_model_order():
    env = fig1_env()

    assert env.available_actions(env.initial_state()) == (ProductAction.mdp("a01"), ProductAction.mdp("a02"))


def test_step_reads_label_of_entered_state():
    """Entering s1 moves the automaton to q1, which credits F_0"""
    env = fig1_env()
    [(x1, p)] = env.successors(env.initial_state(), ProductAction.mdp("a01"))

    assert p == 1.0
    assert x1 == state("s1", R1, "q1", 0, 1)
    assert x1.flags == frozenset({0})


def test_frontier_credited_when_leaving():
    """Leaving (s1, q1) drops index 0 from the frontier"""
    env = fig1_env()
    x1 = env.make_state("s1", R1, "q1", FrontierSet.of({0, 1}))

    [(x2, _)] = env.successors(x1, ProductAction.mdp("a11"))

    assert x2 == state("s1", R1, "q1", 1)
    assert x2.flags == frozenset()


def test_product_step_reward_from_source_state():
    """Reward, discount and flags of a step belong to the state being left"""
    env = fig1_env()
    rng = np.random.default_rng(0)
    x1 = env.make_state("s1", R1, "q1", FrontierSet.of({0, 1}))

    step = env.product_step(x1, ProductAction.mdp("a10"), rng)

    assert step.reward == pytest.approx(1.0 - env.reward_config.r_f)
    assert step.discount == env.reward_config.r_f
    assert step.flags == frozenset({0})
    assert step.state == state("s0", R0, "q0", 1)
    assert not step.rejected


def test_unavailable_action_raises():
    env = fig1_env()

    with pytest.raises(UnavailableActionError):
        env.successors(env.initial_state(), ProductAction.mdp("a11"))


def test_epsilon_actions_in_nondeterministic_part():
    """States in Q_N offer one ε-action per ε-successor after the MDP actions"""
    env = fig2_env()
    x0 = env.initial_state()

    actions = env.available_actions(x0)

    assert [str(u) for u in actions] == ["N", "S", "E", "W", "R", "ε:d"]
    [(x1, p)] = env.successors(x0, ProductAction.epsilon("d"))
    assert p == 1.0
    assert (x1.s, x1.q) == (x0.s, "d")
    assert x1.flags == frozenset({0})


def test_missing_transition_reaches_sink():
    """Entering an unsafe cell while waiting in n0 lands in the rejecting sink"""
    env = fig2_env()
    x = env.start_state("(1,0)")

    outcomes = dict(env.successors(x, ProductAction.mdp("S")))

    assert outcomes[REJECTING_SINK] == pytest.approx(0.9)
    assert env.available_actions(REJECTING_SINK) == (HALT,)
    step = env.product_step(REJECTING_SINK, HALT, np.random.default_rng(0))
    assert step.state == REJECTING_SINK and step.rejected
    assert step.reward == 0.0


def test_successor_mass_sums_to_one():
    env = fig2_env()
    x = env.start_state("(1,1)")
    for u in env.available_actions(x):
        assert sum(p for _, p in env.successors(x, u)) == pytest.approx(1.0)


def test_sampled_steps_match_enumerated_row():
    """10^5 sampled steps from a noisy-label slip cell agree with the enumerated row (chi-square)"""
    noisy = [(frozenset(), 0.9), (R1, 0.1)]
    spec = GridSpec(
        width=3,
        height=3,
        slip=0.1,
        initial_cell=(1, 1),
        cell_labels={(r, c): noisy for r in range(3) for c in range(3)},
        name="noisy",
    )
    env = EPMDPEnvironment(build_grid_env(spec), builtin_automaton("phi_e"))
    p = enumerate_product(env.model, env.automaton)
    north = ProductAction.mdp("N")
    row = p.row(p.initial, p.actions[p.initial].index(north))
    expected = dict(p.row_successors(row))
    x0 = env.initial_state()
    rng = np.random.default_rng(11)
    n = 100_000

    counts = Counter(p.index[env.product_step(x0, north, rng).state] for _ in range(n))

    assert len(expected) == 6
    assert sum(expected.values()) == pytest.approx(1.0, abs=1e-12)
    assert set(counts) <= set(expected)
    order = sorted(expected)
    result = chisquare([counts[j] for j in order], [expected[j] * n for j in order])
    assert result.pvalue > 0.001


def test_enumerate_fig1():

    """The motivating EP-MDP has nine states with two actions each"""
    p = enumerate_product(builtin_model("fig1"), builtin_automaton("phi_e"))

    assert p.num_states == 9
    assert p.num_rows == 18
    assert p.states[p.initial] == fig1_env().initial_state()
    assert validate_product(p).ok
    assert p.accepting[0] == frozenset(i for i, x in enumerate(p.states) if x.s == "s1" and 0 in x.frontier)


def test_enumerate_frozen_product():
    """Without frontier tracking the product has one state per model state"""
    p = enumerate_product(builtin_model("fig1"), builtin_automaton("phi_e"), mode=FrontierMode.FROZEN)

    assert p.num_states == 3
    assert sorted(x.q for x in p.states) == ["q0", "q1", "q2"]


def test_enumerate_with_extra_starts():
    """Extra start states are enumerated and indexed after x0"""
    env = fig2_env()
    starts = [env.start_state("(2,1)")]
    p = enumerate_product(builtin_model("fig2"), builtin_automaton("phi_case1"), extra_starts=starts)

    assert p.starts[0] == p.initial == 0
    assert p.states[p.starts[1]] == starts[0]
    assert REJECTING_SINK in p.index
    assert validate_product(p).ok


def test_enumeration_cap():
    """Going over the cap raises StateBudgetExceededError"""
    with pytest.raises(StateBudgetExceededError):
        enumerate_product(builtin_model("fig1"), builtin_automaton("phi_e"), cap=4)


def test_product_document():
    """Exported products list every state-action row"""
    p = enumerate_product(builtin_model("fig1"), builtin_automaton("phi_e"))
    document = p.to_document()

    assert len(document["states"]) == 9
    assert len(document["rows"]) == 18
    assert document["mode"] == "immediate"
    assert document["states"][0] == "s0|{r0}|q0|{0,1}"


if __name__ == "__main__":
    pytest.main([__file__])
