"""
Maximal reachability probabilities and policies attaining them

Qualitative precomputation first finds the states that cannot reach the
target at all and those that reach it almost surely under some policy;
value iteration then only has to settle the rest.
"""
import logging
from typing import Iterable, List, Optional

import numpy as np
import scipy.sparse as sp

from config.settings import settings
from src.learning import Policy
from src.oracle.mec import EndComponent, amec_set
from src.product import ExplicitProduct

logger = logging.getLogger(__name__)


def _mask(p: ExplicitProduct, states: Iterable[int]) -> np.ndarray:
    mask = np.zeros(p.num_states, dtype=bool)
    mask[list(states)] = True
    return mask


def _structure(p: ExplicitProduct) -> sp.csr_matrix:
    support = p.matrix.copy()
    support.data = np.ones_like(support.data)
    return support


def _any_row(p: ExplicitProduct, rows: np.ndarray) -> np.ndarray:
    """Per state: does any of its rows satisfy the row predicate"""
    return np.add.reduceat(rows.astype(np.int64), p.row_start[:-1]) > 0


def can_reach(p: ExplicitProduct, target: np.ndarray) -> np.ndarray:
    """States with a positive-probability path into target"""
    support = _structure(p)
    reached = target.copy()
    while True:
        rows = support @ reached.astype(np.int64) > 0
        grown = reached | _any_row(p, rows)
        if (grown == reached).all():
            return reached
        reached = grown


def almost_sure_reach(p: ExplicitProduct, target: np.ndarray) -> np.ndarray:
    """States from which some policy reaches target with probability 1"""
    support = _structure(p)
    keep = np.ones(p.num_states, dtype=bool)
    while True:
        stays = support @ (~keep).astype(np.int64) == 0
        reached = target.copy()
        while True:
            rows = stays & (support @ reached.astype(np.int64) > 0)
            grown = reached | _any_row(p, rows)
            if (grown == reached).all():
                break
            reached = grown
        if (reached == keep).all():
            return keep
        keep = reached


def max_reach_probability(
    p: ExplicitProduct,
    target: Iterable[int],
    tolerance: Optional[float] = None,
    max_sweeps: Optional[int] = None,
) -> np.ndarray:
    """
    Pr_max of reaching target from every product state

    Args:
        p: Enumerated product
        target: State indices to reach
        tolerance: Stop when no value moves by more than this in a sweep
        max_sweeps: Sweep limit

    Returns:
        Array of probabilities indexed like p.states
    """
    tol = settings.vi_tolerance if tolerance is None else tolerance
    sweeps = settings.vi_max_sweeps if max_sweeps is None else max_sweeps
    goal = _mask(p, target)
    positive = can_reach(p, goal)
    certain = almost_sure_reach(p, goal)
    values = certain.astype(float)
    starts = p.row_start[:-1]
    for sweep in range(1, sweeps + 1):
        updated = np.maximum.reduceat(p.matrix @ values, starts)
        updated[certain] = 1.0
        updated[~positive] = 0.0
        delta = float(np.max(np.abs(updated - values))) if len(values) else 0.0
        values = updated
        if delta < tol:
            logger.debug(f"Reachability converged after {sweep} sweep(s)")
            break
    else:
        logger.warning(f"Reachability stopped at the sweep limit ({sweeps}) with change {delta:.2e}")
    return values


def _attract(
    p: ExplicitProduct,
    goal: np.ndarray,
    eligible_rows: np.ndarray,
    pending: np.ndarray,
    choice: np.ndarray,
) -> None:
    """Backward layers toward goal; each pending state takes its first eligible row into a lower layer"""
    support = _structure(p)
    reached = goal.copy()
    pending = pending & ~goal
    while pending.any():
        rows = eligible_rows & (support @ reached.astype(np.int64) > 0) & pending[p.row_state]
        candidates = np.flatnonzero(rows)
        if not len(candidates):
            break
        owners, first = np.unique(p.row_state[candidates], return_index=True)
        choice[owners] = candidates[first] - p.row_start[owners]
        reached[owners] = True
        pending[owners] = False


def _tour(p: ExplicitProduct, mec: EndComponent, choice: np.ndarray) -> None:
    """Inside an AMEC keep heading for states that credit a pending accepting set"""
    members = _mask(p, mec.states)
    eligible = np.zeros(p.num_rows, dtype=bool)
    for i, ks in mec.actions.items():
        eligible[[p.row(i, k) for k in ks]] = True
        choice[i] = ks[0]
    goal = members & p.flagged
    _attract(p, goal, eligible, members.copy(), choice)


def optimal_reach_policy(
    p: ExplicitProduct,
    target: Optional[Iterable[int]] = None,
    values: Optional[np.ndarray] = None,
    mecs: Optional[List[EndComponent]] = None,
) -> Policy:
    """
    Deterministic policy attaining Pr_max of reaching target

    Outside the target each state takes a value-preserving action that
    moves it closer to the target. With no explicit target the union of
    AMECs is used, and inside every AMEC the policy keeps visiting states
    that credit pending accepting sets.
    """
    amecs = amec_set(p, mecs)
    if target is None:
        target = frozenset().union(*(m.states for m in amecs))
    goal = _mask(p, target)
    values = max_reach_probability(p, np.flatnonzero(goal)) if values is None else values
    choice = np.zeros(p.num_states, dtype=np.int64)

    row_values = p.matrix @ values
    optimal = row_values >= values[p.row_state] - 1e-9
    _attract(p, goal, optimal, values > 0.0, choice)
    for mec in amecs:
        _tour(p, mec, choice)
    return policy_from_choices(p, choice)


def policy_from_choices(p: ExplicitProduct, choice: np.ndarray) -> Policy:
    """Policy picking local action choice[i] at state i; negative entries are left out"""
    return Policy({p.states[i]: p.actions[i][int(k)] for i, k in enumerate(choice) if k >= 0})


def policy_choices(p: ExplicitProduct, policy: Policy) -> np.ndarray:
    """Local action index per state, -1 where the policy says nothing"""
    choice = np.full(p.num_states, -1, dtype=np.int64)
    for i, x in enumerate(p.states):
        if x in policy:
            u = policy.choices[x]
            if u in p.actions[i]:
                choice[i] = p.actions[i].index(u)
    return choice


def complete_policy(p: ExplicitProduct, policy: Policy) -> Policy:
    """Fill the states a policy never saw with their first action (the greedy choice on an all-zero row)"""
    choice = policy_choices(p, policy)
    missing = int((choice < 0).sum())
    if missing:
        logger.debug(f"Completing policy at {missing} unseen state(s)")
    choice[choice < 0] = 0
    return policy_from_choices(p, choice)
