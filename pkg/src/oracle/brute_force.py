"""
Exhaustive search over deterministic memoryless policies
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.settings import settings
from src.common import StateBudgetExceededError
from src.learning import Policy
from src.oracle.chain import policy_satisfaction_probability
from src.oracle.reachability import policy_from_choices
from src.product import ExplicitProduct

logger = logging.getLogger(__name__)


@dataclass
class BruteForceResult:
    policies_checked: int
    satisfying: int
    best_probability: float
    best_choices: np.ndarray
    best_policy: Policy

    @property
    def exists(self) -> bool:
        """Some deterministic policy satisfies the task with positive probability"""
        return self.satisfying > 0


def brute_force_deterministic_policies(p: ExplicitProduct, budget: Optional[int] = None) -> BruteForceResult:
    """
    Evaluate every deterministic memoryless policy from x0

    Raises:
        StateBudgetExceededError: there are more policies than the budget allows
    """
    budget = settings.brute_force_budget if budget is None else budget
    counts = [len(actions) for actions in p.actions]
    total = math.prod(counts)
    if total > budget:
        raise StateBudgetExceededError(budget, what="policies")

    best_probability = -1.0
    best_choices = np.zeros(p.num_states, dtype=np.int64)
    satisfying = 0
    for combo in itertools.product(*(range(c) for c in counts)):
        choices = np.array(combo, dtype=np.int64)
        probability = policy_satisfaction_probability(p, choices)
        if probability > 0.0:
            satisfying += 1
        if probability > best_probability:
            best_probability, best_choices = probability, choices
    logger.info(
        f"Checked {total} deterministic policies on {p.model_name} x {p.automaton_name} "
        f"({p.mode.value}): {satisfying} satisfy with positive probability, best {best_probability:.4f}"
    )
    return BruteForceResult(
        policies_checked=total,
        satisfying=satisfying,
        best_probability=max(best_probability, 0.0),
        best_choices=best_choices,
        best_policy=policy_from_choices(p, best_choices),
    )
