"""
Optimal values of the shaped discounted objective

U(x) = R(x) + γ(x) · max_u Σ_x' p(x, u, x') U(x'), solved by policy
iteration: each evaluation is one sparse linear solve, and a state only
switches action on a strict improvement.
"""
import logging
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from src.product import ExplicitProduct
from src.reward import RewardConfig

logger = logging.getLogger(__name__)


def optimal_discounted_values(
    p: ExplicitProduct,
    cfg: Optional[RewardConfig] = None,
    max_iterations: int = 1000,
    improvement: float = 1e-12,
) -> np.ndarray:
    """
    Fixed point the learned values are compared against

    Args:
        p: Enumerated product
        cfg: Reward shaping parameters
        max_iterations: Policy iteration limit
        improvement: Smallest gain that makes a state switch action

    Returns:
        max_u Q*(x, u) for every product state
    """
    cfg = cfg or RewardConfig()
    rewards = p.reward_vector(cfg)
    discounts = p.discount_vector(cfg)
    starts = p.row_start[:-1]
    rows = starts.copy()
    identity = sp.identity(p.num_states, format="csr")
    values = np.zeros(p.num_states)
    for iteration in range(1, max_iterations + 1):
        chosen = p.matrix[rows, :]
        system = identity - sp.diags(discounts) @ chosen
        values = np.atleast_1d(spsolve(system.tocsc(), rewards))
        q = rewards[p.row_state] + discounts[p.row_state] * (p.matrix @ values)
        best = np.maximum.reduceat(q, starts)
        candidates = np.flatnonzero(q >= best[p.row_state])
        owners, first = np.unique(p.row_state[candidates], return_index=True)
        greedy = rows.copy()
        greedy[owners] = candidates[first]
        switch = q[greedy] > q[rows] + improvement
        if not switch.any():
            logger.debug(f"Policy iteration stable after {iteration} evaluation(s)")
            return values
        rows = np.where(switch, greedy, rows)
    logger.warning(f"Policy iteration hit its limit of {max_iterations} evaluations")
    return values
