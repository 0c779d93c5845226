"""
Explicitly enumerated EP-MDP for exact analysis
"""
import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from config.settings import settings
from src.automata import LDGBA
from src.common import StateBudgetExceededError, ValidationReport
from src.embedding import FrontierMode
from src.mdp import PLMDP
from src.product.environment import EPMDPEnvironment
from src.product.state import ProductAction, ProductState
from src.reward import RewardConfig, discount, reward

logger = logging.getLogger(__name__)


@dataclass
class ExplicitProduct:
    """
    Reachable EP-MDP in matrix form

    Rows of `matrix` are state-action pairs: the rows of state i are
    row_start[i] .. row_start[i + 1] - 1, in the order of actions[i].
    """
    states: Tuple[ProductState, ...]
    actions: Tuple[Tuple[ProductAction, ...], ...]
    row_start: np.ndarray
    matrix: sp.csr_matrix
    accepting: Tuple[FrozenSet[int], ...]
    initial: int = 0
    starts: Tuple[int, ...] = (0,)
    mode: FrontierMode = FrontierMode.IMMEDIATE
    model_name: str = "model"
    automaton_name: str = "automaton"

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_rows(self) -> int:
        return int(self.row_start[-1])

    @property
    def num_sets(self) -> int:
        return len(self.accepting)

    @cached_property
    def index(self) -> Dict[ProductState, int]:
        return {x: i for i, x in enumerate(self.states)}

    @cached_property
    def row_state(self) -> np.ndarray:
        """Owning state of every row"""
        return np.repeat(np.arange(self.num_states), np.diff(self.row_start))

    @cached_property
    def flagged(self) -> np.ndarray:
        return np.array([bool(x.flags) for x in self.states], dtype=bool)

    def rows_of(self, i: int) -> range:
        return range(int(self.row_start[i]), int(self.row_start[i + 1]))

    def row(self, i: int, k: int) -> int:
        return int(self.row_start[i]) + k

    def row_successors(self, r: int) -> List[Tuple[int, float]]:
        lo, hi = self.matrix.indptr[r], self.matrix.indptr[r + 1]
        return list(zip(self.matrix.indices[lo:hi].tolist(), self.matrix.data[lo:hi].tolist()))

    def reward_vector(self, cfg: RewardConfig) -> np.ndarray:
        return np.array([reward(x, cfg) for x in self.states])

    def discount_vector(self, cfg: RewardConfig) -> np.ndarray:
        return np.array([discount(x, cfg) for x in self.states])

    def to_document(self) -> Dict[str, Any]:
        """States, rows and accepting sets as a JSON-ready document"""
        rows = []
        for i in range(self.num_states):
            for k, u in enumerate(self.actions[i]):
                rows.append(
                    {
                        "state": i,
                        "action": str(u),
                        "successors": [[j, p] for j, p in self.row_successors(self.row(i, k))],
                    }
                )
        return {
            "model": self.model_name,
            "automaton": self.automaton_name,
            "mode": self.mode.value,
            "initial": self.initial,
            "states": [x.encode() for x in self.states],
            "rows": rows,
            "accepting": [sorted(f_set) for f_set in self.accepting],
        }


def validate_product(p: ExplicitProduct, tolerance: Optional[float] = None) -> ValidationReport:
    """Row stochasticity and ε-row determinism"""
    tol = settings.probability_tolerance if tolerance is None else tolerance
    report = ValidationReport(subject=f"product {p.model_name} x {p.automaton_name}")
    for i in range(p.num_states):
        for k, u in enumerate(p.actions[i]):
            succ = p.row_successors(p.row(i, k))
            total = math.fsum(prob for _, prob in succ)
            if abs(total - 1.0) > tol:
                report.add("row-stochastic", f"{p.states[i]} / {u}", f"sum={total!r}")
            if u.is_epsilon and len(succ) != 1:
                report.add("epsilon-row-branching", f"{p.states[i]} / {u}", str(len(succ)))
    return report


def enumerate_environment(
    env: EPMDPEnvironment,
    cap: Optional[int] = None,
    extra_starts: Iterable[ProductState] = (),
) -> ExplicitProduct:
    """
    Breadth-first closure of the product from x0 and any extra start states

    Raises:
        StateBudgetExceededError: more than `cap` states are reachable
    """
    cap = settings.enumeration_cap if cap is None else cap
    roots = [env.initial_state()] + [x for x in extra_starts]
    index: Dict[ProductState, int] = {}
    order: List[ProductState] = []
    queue: deque = deque()

    def visit(x: ProductState) -> int:
        if x not in index:
            if len(order) >= cap:
                raise StateBudgetExceededError(cap, frontier_size=len(queue))
            index[x] = len(order)
            order.append(x)
            queue.append(x)
        return index[x]

    starts = tuple(visit(x) for x in roots)
    actions: List[Tuple[ProductAction, ...]] = []
    row_start = [0]
    data: List[float] = []
    indices: List[int] = []
    indptr = [0]
    while queue:
        x = queue.popleft()
        available = env.available_actions(x)
        actions.append(available)
        for u in available:
            for target, prob in env.successors(x, u):
                indices.append(visit(target))
                data.append(prob)
            indptr.append(len(indices))
        row_start.append(row_start[-1] + len(available))

    n = len(order)
    matrix = sp.csr_matrix(
        (np.array(data, dtype=float), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(row_start[-1], n),
    )
    accepting = tuple(
        frozenset(i for i, x in enumerate(order) if j in x.flags) for j in range(env.automaton.num_sets)
    )
    product = ExplicitProduct(
        states=tuple(order),
        actions=tuple(actions),
        row_start=np.array(row_start, dtype=np.int64),
        matrix=matrix,
        accepting=accepting,
        initial=starts[0],
        starts=starts,
        mode=env.mode,
        model_name=env.model.name,
        automaton_name=env.automaton.name,
    )
    logger.info(
        f"Enumerated product {env.model.name} x {env.automaton.name} ({env.mode.value}): "
        f"{n} states, {product.num_rows} state-action rows"
    )
    return product


def enumerate_product(
    model: PLMDP,
    automaton: LDGBA,
    cap: Optional[int] = None,
    mode: FrontierMode = FrontierMode.IMMEDIATE,
    extra_starts: Iterable[ProductState] = (),
) -> ExplicitProduct:
    return enumerate_environment(EPMDPEnvironment(model, automaton, mode), cap, extra_starts)
