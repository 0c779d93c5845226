"""Tests for end components, reachability, induced chains and exhaustive policy search"""
import numpy as np
import pytest

from src.automata import builtin_automaton, recurrence_automaton
from src.common import StateBudgetExceededError
from src.embedding import FrontierMode, FrontierSet
from src.learning import AlphaSchedule, LearnConfig, Policy, train_environment
from src.mdp import GridSpec, build_grid_env, builtin_model
from src.oracle import (
    MECKind,
    almost_sure_reach,
    amec_states,
    brute_force_deterministic_policies,
    build_oracle_report,
    can_reach,
    classify_recurrent_classes,
    complete_policy,
    induced_chain,
    max_reach_probability,
    mec_decomposition,
    optimal_discounted_values,
    optimal_reach_policy,
    policy_satisfaction_probability,
)
from src.product import REJECTING_SINK, EPMDPEnvironment, ProductAction, enumerate_environment, enumerate_product
from src.reward import RewardConfig


def fig1_product(mode=FrontierMode.IMMEDIATE):
    return enumerate_product(builtin_model("fig1"), builtin_automaton("phi_e"), mode=mode)


@pytest.fixture(scope="module")
def fig2():
    """fig2 x phi_case1 with (2,1) as a second start state"""
    env = EPMDPEnvironment(builtin_model("fig2"), builtin_automaton("phi_case1"))
    p = enumerate_environment(env, extra_starts=[env.start_state("(2,1)")])
    return p, p.starts[1]


def two_goal_grid():
    """4x4 slip grid with r1 in the north-east corner and r2 in the south-west corner"""
    spec = GridSpec(
        width=4,
        height=4,
        slip=0.1,
        cell_labels={(0, 3): [(frozenset({"r1"}), 1.0)], (3, 0): [(frozenset({"r2"}), 1.0)]},
        name="two-goal",
    )
    return build_grid_env(spec)


def test_fig1_has_single_amec():
    """The six tracked states form one accepting end component; x0's round is transient"""
    p = fig1_product()

    mecs = mec_decomposition(p)

    assert len(mecs) == 1
    [mec] = mecs
    assert mec.kind is MECKind.AMEC
    assert mec.accepting == frozenset({0, 1})
    assert {p.states[i].frontier for i in mec.states} == {FrontierSet.of({0}), FrontierSet.of({1})}
    assert all(mec.actions[i] == (0, 1) for i in mec.states)


def test_frozen_frontier_breaks_memoryless_policies():
    """Without tracking the whole model is an AMEC, yet no deterministic policy satisfies the task"""
    p = fig1_product(FrontierMode.FROZEN)

    assert [m.kind for m in mec_decomposition(p)] == [MECKind.AMEC]
    result = brute_force_deterministic_policies(p)

    assert result.policies_checked == 8
    assert not result.exists
    assert result.best_probability == 0.0


def test_tracking_frontier_admits_satisfying_policy():
    """With the frontier some memoryless policy on the product satisfies the task"""
    p = fig1_product()

    result = brute_force_deterministic_policies(p)

    assert result.policies_checked == 2**9
    assert result.exists
    assert result.best_probability == pytest.approx(1.0)
    assert policy_satisfaction_probability(p, result.best_policy) == pytest.approx(1.0)


def test_brute_force_respects_budget():
    with pytest.raises(StateBudgetExceededError):
        brute_force_deterministic_policies(fig1_product(), budget=100)


def test_recurrent_classes_meet_all_or_none_of_the_sets():
    """Under every deterministic policy on the fig1 product no recurrent class is partial"""
    p = fig1_product()
    for combo in range(2**p.num_states):
        choices = np.array([(combo >> i) & 1 for i in range(p.num_states)], dtype=np.int64)
        verdicts = {c.verdict for c in classify_recurrent_classes(p, choices)}
        assert verdicts <= {"all", "none"}, choices


def test_random_policies_on_grid_never_partial():
    """100 random deterministic policies on a slip grid product: each class is all or none"""
    p = enumerate_product(two_goal_grid(), builtin_automaton("phi_e"))
    rng = np.random.default_rng(8)

    for _ in range(100):
        choices = np.array([rng.integers(len(actions)) for actions in p.actions], dtype=np.int64)
        for c in classify_recurrent_classes(p, choices):
            assert c.verdict in ("all", "none")


def test_grid_product_has_amec():
    p = enumerate_product(two_goal_grid(), builtin_automaton("phi_e"))

    probabilities = max_reach_probability(p, amec_states(p))

    assert probabilities[p.initial] == pytest.approx(1.0)
    policy = optimal_reach_policy(p)
    assert policy_satisfaction_probability(p, policy) == pytest.approx(1.0)


def test_fig2_reach_probabilities(fig2):
    """From (2,1) one step north has to succeed before the unsafe cells are left behind"""
    p, side = fig2
    target = amec_states(p)

    probabilities = max_reach_probability(p, target)

    assert probabilities[p.initial] == pytest.approx(1.0)
    assert probabilities[side] == pytest.approx(0.9, abs=1e-9)
    assert probabilities[p.index[REJECTING_SINK]] == 0.0


def test_reach_probability_is_bellman_fixed_point(fig2):
    """Outside the target every value equals its best one-step expectation"""
    p, _ = fig2
    target = sorted(amec_states(p))

    values = max_reach_probability(p, target, tolerance=1e-13)
    backup = np.maximum.reduceat(p.matrix @ values, p.row_start[:-1])
    backup[target] = 1.0

    assert np.all((values >= 0.0) & (values <= 1.0))
    assert np.max(np.abs(backup - values)) <= 1e-9


def test_qualitative_sets(fig2):

    p, side = fig2
    goal = np.zeros(p.num_states, dtype=bool)
    goal[list(amec_states(p))] = True

    positive = can_reach(p, goal)
    certain = almost_sure_reach(p, goal)

    assert certain[p.initial]
    assert positive[side] and not certain[side]
    assert not positive[p.index[REJECTING_SINK]]


def test_optimal_reach_policy_attains_maximum(fig2):
    """The synthesized policy reaches the accepting components with Pr_max from both starts"""
    p, side = fig2

    policy = optimal_reach_policy(p)

    assert policy_satisfaction_probability(p, policy) == pytest.approx(1.0)
    assert policy_satisfaction_probability(p, policy, start=side) == pytest.approx(0.9)


def test_policy_into_sink_satisfies_nothing(fig2):
    """Pushing south from (2,1) eventually slips into an unsafe cell"""
    p, side = fig2
    south = ProductAction.mdp("S")
    policy = Policy({x: (south if south in actions else actions[0]) for x, actions in zip(p.states, p.actions)})

    chain = induced_chain(p, policy, start=side)

    assert chain.recurrent == [frozenset({p.index[REJECTING_SINK]})]
    assert policy_satisfaction_probability(p, policy, start=side) == 0.0


def test_discounted_values_approach_satisfaction_probability(fig2):
    """With r_F and γ_F close to 1 the optimal shaped values sit next to Pr_max"""
    p, side = fig2

    values = optimal_discounted_values(p)
    probabilities = max_reach_probability(p, amec_states(p))

    assert values[p.initial] == pytest.approx(probabilities[p.initial], abs=0.01)
    assert values[side] == pytest.approx(0.9, abs=0.01)
    assert np.max(np.abs(values - probabilities)) <= 0.05


def test_complete_policy_fills_unseen_states():
    """States a policy never mentions get their first action"""
    p = fig1_product()
    x0 = p.states[p.initial]

    completed = complete_policy(p, Policy({x0: ProductAction.mdp("a02")}))

    assert len(completed) == p.num_states
    assert completed.action(x0) == ProductAction.mdp("a02")
    assert all(completed.action(x) == p.actions[i][0] for i, x in enumerate(p.states) if i != p.initial)


def test_oracle_report_document():
    p = fig1_product()
    optimal = optimal_reach_policy(p)

    report = build_oracle_report(p, policies={"optimal": optimal})

    assert report["amec_count"] == 1
    assert report["num_states"] == 9
    assert report["initial_max_probability"] == 1.0
    assert report["mecs"][0]["kind"] == "AMEC"
    assert report["policies"]["optimal"]["satisfaction_probability"] == 1.0
    assert [c["verdict"] for c in report["policies"]["optimal"]["recurrent_classes"]] == ["all"]


@pytest.mark.slow
def test_learned_values_track_oracle_on_reach_and_stay(fig2):
    """Polynomial step sizes bring learned values within 0.05 of Pr_max wherever the learned policy goes"""
    p, side = fig2
    env = EPMDPEnvironment(builtin_model("fig2"), builtin_automaton("phi_case1"))
    cfg = LearnConfig(
        episodes=20000,
        tau=100,
        alpha_schedule=AlphaSchedule.POLYNOMIAL,
        stop_on_convergence=False,
        seed=1,
    )

    result = train_environment(env, cfg)
    probabilities = max_reach_probability(p, amec_states(p))
    policy = complete_policy(p, result.policy)
    chain = induced_chain(p, policy)

    assert probabilities[side] == pytest.approx(0.9, abs=0.001)
    assert result.value_at_x0 == pytest.approx(probabilities[p.initial], abs=0.05)
    for i in chain.states:
        x = p.states[i]
        assert result.values.get(x, 0.0) == pytest.approx(probabilities[i], abs=0.05), str(x)
    assert policy_satisfaction_probability(p, policy) == pytest.approx(1.0, abs=0.001)


def random_instance(seed):
    """5x5 slip grid with randomly placed propositions and a random two-goal recurrence task"""
    rng = np.random.default_rng(seed)
    free = [(r, c) for r in range(5) for c in range(5) if (r, c) != (0, 0)]
    picks = rng.choice(len(free), size=4, replace=False)
    a, b, c1, c2 = (free[i] for i in picks)
    hazard = float(rng.uniform(0.1, 0.5))
    cells = {
        a: [(frozenset({"a"}), 1.0)],
        b: [(frozenset({"b"}), 1.0)],
        c1: [(frozenset({"c"}), hazard), (frozenset(), 1.0 - hazard)],
        c2: [(frozenset({"c"}), hazard), (frozenset(), 1.0 - hazard)],
    }
    model = build_grid_env(GridSpec(width=5, height=5, slip=0.1, cell_labels=cells, name=f"random-{seed}"))
    props = [str(x) for x in rng.permutation(["a", "b", "c"])]
    automaton = recurrence_automaton(f"random-{seed}", props[:2], props[2:], lambda cls: "".join(sorted(cls)) or "idle")
    return model, automaton


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(5))
def test_learned_value_matches_oracle_on_random_instances(seed):
    """Learned value at x0 lands within 0.05 of the maximal satisfaction probability"""
    model, automaton = random_instance(seed)
    env = EPMDPEnvironment(model, automaton, reward_config=RewardConfig(r_f=0.9, gamma_f=0.99999))
    p = enumerate_environment(env)
    probability = max_reach_probability(p, amec_states(p))[p.initial]
    cfg = LearnConfig(
        episodes=10000,
        tau=100,
        alpha_schedule=AlphaSchedule.POLYNOMIAL,
        stop_on_convergence=False,
        seed=seed,
    )

    result = train_environment(env, cfg)

    assert result.value_at_x0 == pytest.approx(probability, abs=0.05)


if __name__ == "__main__":
    pytest.main([__file__])
