"""
Degeneralization of an LDGBA into a single-accepting-set LDBA
"""
import logging
from collections import deque
from typing import Dict, List, Tuple

from src.automata.ldgba import LDGBA, validate_ldgba
from src.common import AutomatonValidationError, Letter

logger = logging.getLogger(__name__)


def _counter_name(q: str, i: int) -> str:
    return f"{q}#{i}"


def degeneralize(a: LDGBA) -> LDGBA:
    """
    Round-robin counter construction over Q x {0..f-1}

    The counter of (q, i) advances to (i + 1) mod f when q is in F_i, so it
    moves on every time the set it waits for is visited. The accepting set
    is {(q, 0) : q in F_0}. Only states reachable from (q0, 0) are built.

    Args:
        a: Validated LDGBA

    Returns:
        LDBA with one accepting set and states named "q#i"
    """
    f = a.num_sets

    def advance(q: str, i: int) -> int:
        return (i + 1) % f if q in a.accepting[i] else i

    start = (a.initial, 0)
    order: List[Tuple[str, int]] = [start]
    seen = {start}
    queue = deque([start])
    transitions: Dict[Tuple[str, Letter], Tuple[str, ...]] = {}
    epsilon: Dict[str, Tuple[str, ...]] = {}

    def visit(node: Tuple[str, int]) -> str:
        if node not in seen:
            seen.add(node)
            order.append(node)
            queue.append(node)
        return _counter_name(*node)

    while queue:
        q, i = queue.popleft()
        nxt = advance(q, i)
        for letter in a.letters:
            targets = a.successors(q, letter)
            if targets:
                transitions[(_counter_name(q, i), letter)] = tuple(visit((t, nxt)) for t in targets)
        eps = a.epsilon_successors(q)
        if eps:
            epsilon[_counter_name(q, i)] = tuple(visit((t, nxt)) for t in eps)

    states = tuple(_counter_name(q, i) for q, i in order)
    result = LDGBA(
        props=a.props,
        states=states,
        initial=_counter_name(*start),
        q_d=frozenset(_counter_name(q, i) for q, i in order if q in a.q_d),
        q_n=frozenset(_counter_name(q, i) for q, i in order if q in a.q_n),
        transitions=transitions,
        epsilon=epsilon,
        accepting=(frozenset(_counter_name(q, 0) for q, i in order if i == 0 and q in a.accepting[0]),),
        name=f"{a.name}-ldba",
    )
    report = validate_ldgba(result)
    if not report.ok:
        raise AutomatonValidationError(report)
    logger.info(f"Degeneralized '{a.name}': {len(a.states)} -> {len(states)} states")
    return result
