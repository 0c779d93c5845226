"""
Markov chains induced by stationary deterministic policies
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Union

import networkx as nx
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from src.common import PolicyGapError
from src.learning import Policy
from src.oracle.reachability import policy_choices
from src.product import ExplicitProduct

logger = logging.getLogger(__name__)

PolicyLike = Union[Policy, Sequence[int], np.ndarray]


@dataclass
class InducedChain:
    """
    The chain reachable from `start` under a fixed policy

    `matrix` is indexed by position in `states`, which holds product state
    indices. Recurrent classes are the bottom SCCs.
    """
    start: int
    states: List[int]
    matrix: sp.csr_matrix
    transient: FrozenSet[int]
    recurrent: List[FrozenSet[int]]

    @property
    def position(self) -> Dict[int, int]:
        return {i: k for k, i in enumerate(self.states)}


@dataclass(frozen=True)
class RecurrentClassReport:
    states: FrozenSet[int]
    accepting: FrozenSet[int]
    verdict: str  # all | none | partial


def _as_choices(p: ExplicitProduct, policy: PolicyLike) -> np.ndarray:
    if isinstance(policy, Policy):
        return policy_choices(p, policy)
    return np.asarray(policy, dtype=np.int64)


def induced_chain(p: ExplicitProduct, policy: PolicyLike, start: Optional[int] = None) -> InducedChain:
    """
    Build the chain a policy induces from `start` (default x0)

    Raises:
        PolicyGapError: the policy has no action at a reachable state
    """
    choice = _as_choices(p, policy)
    start = p.initial if start is None else start
    order = [start]
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        i = queue.popleft()
        if choice[i] < 0:
            raise PolicyGapError(p.states[i])
        for j, prob in p.row_successors(p.row(i, int(choice[i]))):
            edges.append((i, j, prob))
            if j not in seen:
                seen.add(j)
                order.append(j)
                queue.append(j)

    where = {i: k for k, i in enumerate(order)}
    rows = [where[i] for i, _, _ in edges]
    cols = [where[j] for _, j, _ in edges]
    data = [prob for _, _, prob in edges]
    matrix = sp.csr_matrix((data, (rows, cols)), shape=(len(order), len(order)))

    graph = nx.DiGraph()
    graph.add_nodes_from(order)
    graph.add_edges_from((i, j) for i, j, _ in edges)
    condensed = nx.condensation(graph)
    recurrent = [
        frozenset(condensed.nodes[c]["members"]) for c in condensed.nodes if condensed.out_degree(c) == 0
    ]
    recurrent.sort(key=min)
    closed = frozenset().union(*recurrent)
    transient = frozenset(order) - closed
    return InducedChain(start, order, matrix, transient, recurrent)


def _verdict(p: ExplicitProduct, states: FrozenSet[int]) -> RecurrentClassReport:
    met = frozenset(j for j, f_set in enumerate(p.accepting) if f_set & states)
    if len(met) == p.num_sets:
        verdict = "all"
    elif not met:
        verdict = "none"
    else:
        verdict = "partial"
    return RecurrentClassReport(states, met, verdict)


def classify_recurrent_classes(
    p: ExplicitProduct,
    policy: PolicyLike,
    start: Optional[int] = None,
    chain: Optional[InducedChain] = None,
) -> List[RecurrentClassReport]:
    """For every recurrent class, which accepting sets it meets and whether that is all, none or some"""
    chain = chain or induced_chain(p, policy, start)
    return [_verdict(p, cls) for cls in chain.recurrent]


def policy_satisfaction_probability(
    p: ExplicitProduct,
    policy: PolicyLike,
    start: Optional[int] = None,
    chain: Optional[InducedChain] = None,
) -> float:
    """
    Probability of settling in a recurrent class that meets every accepting set

    Solves the absorption equations of the induced chain with a sparse
    linear solve over the states that can still reach such a class.
    """
    chain = chain or induced_chain(p, policy, start)
    good = [cls for cls in chain.recurrent if _verdict(p, cls).verdict == "all"]
    if not good:
        return 0.0
    target = frozenset().union(*good)
    if chain.start in target:
        return 1.0

    where = chain.position
    graph = nx.DiGraph()
    graph.add_nodes_from(chain.states)
    coo = chain.matrix.tocoo()
    graph.add_edges_from((chain.states[r], chain.states[c]) for r, c in zip(coo.row, coo.col))
    reverse = graph.reverse(copy=False)
    hopeful = set()
    for t in target:
        hopeful |= nx.descendants(reverse, t)
    unknown = sorted(hopeful - target, key=where.get)
    if chain.start not in hopeful:
        return 0.0

    local = [where[i] for i in unknown]
    sub = chain.matrix[local, :]
    target_cols = [where[i] for i in target]
    b = np.asarray(sub[:, target_cols].sum(axis=1)).ravel()
    a = sp.identity(len(local), format="csr") - sub[:, local]
    solution = np.atleast_1d(spsolve(a.tocsc(), b))
    value = float(solution[unknown.index(chain.start)])
    return min(max(value, 0.0), 1.0)
