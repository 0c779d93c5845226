"""Tests for the tracking frontier and the embedded automaton"""
from itertools import combinations

import pytest

from src.automata import FORMULAS, Lasso, builtin_automaton, holds_on_lasso, lasso_accepted, lasso_battery
from src.embedding import (
    EmbeddedState,
    FrontierMode,
    FrontierSet,
    accepting_flags,
    eldgba_step,
    embedded_lasso_accepted,
    frontier_update,
    generate_run,
    initial_embedded,
    is_accepting_embedded,
)

F2 = (frozenset({"a", "ab"}), frozenset({"b", "ab"}))
F3 = (frozenset({"a"}), frozenset({"b"}), frozenset({"c"}))
R1, R2, R0 = frozenset({"r1"}), frozenset({"r2"}), frozenset({"r0"})


def frontier(*indices):
    return FrontierSet.of(indices)


def test_frontier_set_views():
    """Sets and masks describe the same frontier"""
    t = frontier(0, 2)

    assert t.mask == 0b101
    assert FrontierSet.from_mask(0b101) == t
    assert list(t) == [0, 2]
    assert str(t) == "{0,2}"
    assert 2 in t and 1 not in t


def test_update_removes_visited_set():
    """Visiting F_1 drops index 1 from a larger frontier"""
    assert frontier_update("b", frontier(0, 1, 2), F3) == frontier(0, 2)


def test_update_ignores_non_accepting_state():
    """States outside every F_j leave the frontier alone"""
    assert frontier_update("z", frontier(1), F3) == frontier(1)


def test_update_ignores_already_credited_set():
    """A set no longer pending is not credited twice"""
    assert frontier_update("a", frontier(1, 2), F3) == frontier(1, 2)


def test_immediate_reset_excludes_visited_sets():
    """Emptying the frontier restarts it without the sets just visited"""
    assert frontier_update("c", frontier(2), F3) == frontier(0, 1)


def test_immediate_reset_when_state_in_every_set():
    """A state in all accepting sets resets to the full frontier"""
    assert frontier_update("ab", frontier(0, 1), F2) == frontier(0, 1)
    assert frontier_update("q", frontier(0), (frozenset({"q"}),)) == frontier(0)


def test_deferred_reset():
    """Deferred mode keeps the empty frontier until the next accepting visit"""
    emptied = frontier_update("c", frontier(2), F3, FrontierMode.DEFERRED)

    assert emptied == frontier()
    assert frontier_update("z", emptied, F3, FrontierMode.DEFERRED) == frontier()
    assert frontier_update("a", emptied, F3, FrontierMode.DEFERRED) == frontier(1, 2)
    assert accepting_flags("a", emptied, F3) == frozenset({0})


def test_frozen_mode_never_tracks():
    """Frozen mode always reports the full frontier"""
    assert frontier_update("a", frontier(0), F3, FrontierMode.FROZEN) == frontier(0, 1, 2)


def test_accepting_flags_use_pending_sets():
    """Flags are the owned sets that are still pending"""
    assert accepting_flags("a", frontier(0, 1), F2) == frozenset({0})
    assert accepting_flags("a", frontier(1), F2) == frozenset()


def test_round_closing_visit_credits_every_owned_set():
    """Closing a round also opens the next one, so already credited sets count again"""
    assert accepting_flags("ab", frontier(1), F2) == frozenset({0, 1})
    assert frontier_update("ab", frontier(1), F2) == frontier(0, 1)

    sets = (frozenset({"ab"}), frozenset({"ab", "bc"}), frozenset({"bc"}))
    assert accepting_flags("bc", frontier(2), sets) == frozenset({1, 2})
    assert frontier_update("bc", frontier(2), sets) == frontier(0)


def test_eldgba_step_reports_flags_and_next_frontier():
    """Reading r1 from q0 credits F_0 and leaves {1} pending"""
    a = builtin_automaton("phi_e")
    x0 = initial_embedded(a)

    [(x1, flags)] = eldgba_step(a, x0, R1)

    assert x1 == EmbeddedState("q1", frontier(1))
    assert flags == frozenset({0})


def test_eldgba_step_on_epsilon():
    """ε-moves are only offered by nondeterministic states"""
    a = builtin_automaton("phi_case1")
    x0 = initial_embedded(a)

    [(x1, flags)] = eldgba_step(a, x0, None)

    assert x1.q == "d"
    assert flags == frozenset({0})
    assert eldgba_step(a, x1, None) == []


def test_eldgba_step_missing_transition():
    """No base successor means no embedded successor"""
    a = builtin_automaton("phi_case1")

    assert eldgba_step(a, initial_embedded(a), frozenset({"u"})) == []


def test_is_accepting_embedded():
    """Acceptance of an embedded state depends on its frontier"""
    a = builtin_automaton("phi_e")

    assert is_accepting_embedded(a, EmbeddedState("q1", frontier(0, 1)), 0)
    assert not is_accepting_embedded(a, EmbeddedState("q1", frontier(1)), 0)
    with pytest.raises(IndexError):
        is_accepting_embedded(a, EmbeddedState("q1", frontier(1)), 2)


def test_run_credits_each_set_once_per_round():
    """Repeating r1 earns one credit until r2 closes the round"""
    a = builtin_automaton("phi_e")
    word = [R1, R1, R1, R2, R1, R0, R2]

    run = generate_run(a, word, len(word))

    assert [sorted(f) for f in run.flags] == [[0], [], [], [1], [0], [], [1]]
    assert run.flag_counts(2) == [2, 2]
    assert run.states[-1].frontier == frontier(0)
    assert not run.truncated


def test_run_stops_without_transition():
    """A missing transition truncates the run with a diagnostic"""
    a = builtin_automaton("phi_case1")
    word = [frozenset(), frozenset({"u"}), frozenset()]

    run = generate_run(a, word, 3)

    assert run.truncated
    assert len(run.states) == 2


def test_run_with_epsilon_jump():
    """epsilon_at takes the ε-move before reading that position"""
    a = builtin_automaton("phi_case1")
    word = [frozenset(), frozenset({"t"}), frozenset({"t"})]

    run = generate_run(a, word, 3, epsilon_at=[1])

    assert [x.q for x in run.states] == ["n0", "n0", "d", "d", "d"]
    assert run.flag_counts(1) == [3]


def test_run_length_beyond_word():
    """Asking for more letters than the word holds raises"""
    with pytest.raises(ValueError):
        generate_run(builtin_automaton("phi_e"), [R1], 2)


STATES = ("z", "a", "b", "c", "ab", "ac", "bc", "abc")


def reference_visit(q, pending, sets):
    """Flags and next frontier of an immediate-reset visit, written out set by set"""
    owned = {j for j, f in enumerate(sets) if q in f}
    full = set(range(len(sets)))
    if owned and pending <= owned:
        return owned, (full - owned) or full
    return owned & pending, pending - owned


@pytest.mark.parametrize("f", [1, 2, 3])
def test_frontier_matches_reference_exhaustively(f):
    """Every state and every nonempty frontier over up to three accepting sets"""
    sets = tuple(frozenset(q for q in STATES if letter in q) for letter in "abc"[:f])
    frontiers = [set(c) for n in range(1, f + 1) for c in combinations(range(f), n)]

    for q in STATES:
        for pending in frontiers:
            flags, expected = reference_visit(q, pending, sets)
            t = FrontierSet.of(pending)
            updated = frontier_update(q, t, sets)

            assert accepting_flags(q, t, sets) == frozenset(flags), (q, pending)
            assert updated == FrontierSet.of(expected), (q, pending)
            assert updated.pending or not pending
            if updated.pending == frozenset(range(f)) and t.pending != updated.pending:
                assert flags, (q, pending)


def test_overlapping_goals_never_starve():
    """A set credited early in a round comes back in the next one"""
    a = builtin_automaton("phi_case2")
    w = Lasso.of([], [[], ["Base1", "Base2"], ["Base2", "Base3"]])

    assert holds_on_lasso(FORMULAS["phi_case2"], w)
    assert lasso_accepted(a, w)
    for mode in FrontierMode:
        assert embedded_lasso_accepted(a, w, mode), mode

    word = [frozenset(letter) for letter in w.cycle] * 10
    run = generate_run(a, word, len(word))
    assert run.flag_counts(3) == [10, 20, 10]


@pytest.mark.parametrize("mode", list(FrontierMode))
def test_embedded_acceptance_matches_base(mode):
    """Every frontier mode keeps the language of the base automaton"""
    a = builtin_automaton("phi_case2")

    for w in lasso_battery("phi_case2", 100, seed=3):
        assert embedded_lasso_accepted(a, w, mode) is lasso_accepted(a, w), str(w)


if __name__ == "__main__":
    pytest.main([__file__])
