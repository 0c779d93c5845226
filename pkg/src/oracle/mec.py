"""
Maximal end components of an enumerated product

Iterative refinement: take SCCs of the graph induced by the allowed
actions, drop every action that can leave its state's SCC, drop states
left without actions, repeat until nothing changes.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from src.product import ExplicitProduct

logger = logging.getLogger(__name__)


class MECKind(str, Enum):
    AMEC = "AMEC"  # meets every accepting set
    NMEC = "NMEC"  # meets some of them
    RMEC = "RMEC"  # meets none


@dataclass(frozen=True)
class EndComponent:
    states: FrozenSet[int]
    actions: Dict[int, Tuple[int, ...]]
    accepting: FrozenSet[int]
    kind: MECKind

    def __hash__(self):
        return hash(self.states)

    def __len__(self) -> int:
        return len(self.states)


def _component_kind(p: ExplicitProduct, states: FrozenSet[int]) -> Tuple[FrozenSet[int], MECKind]:
    met = frozenset(j for j, f_set in enumerate(p.accepting) if f_set & states)
    if len(met) == p.num_sets:
        return met, MECKind.AMEC
    if not met:
        return met, MECKind.RMEC
    return met, MECKind.NMEC


def mec_decomposition(p: ExplicitProduct) -> List[EndComponent]:
    """
    Maximal end components, ordered by their smallest state index

    Args:
        p: Enumerated product

    Returns:
        Pairwise disjoint end components with their allowed local action
        indices and AMEC / NMEC / RMEC kind
    """
    remaining: Set[int] = set(range(p.num_states))
    allowed: Dict[int, Set[int]] = {i: set(range(len(p.actions[i]))) for i in remaining}
    successors = {
        (i, k): [j for j, _ in p.row_successors(p.row(i, k))] for i in remaining for k in allowed[i]
    }

    while True:
        graph = nx.DiGraph()
        graph.add_nodes_from(remaining)
        for i in remaining:
            for k in allowed[i]:
                graph.add_edges_from((i, j) for j in successors[(i, k)] if j in remaining)
        component: Dict[int, int] = {}
        for cid, members in enumerate(nx.strongly_connected_components(graph)):
            for i in members:
                component[i] = cid

        changed = False
        for i in sorted(remaining):
            for k in sorted(allowed[i]):
                if any(j not in remaining or component[j] != component[i] for j in successors[(i, k)]):
                    allowed[i].discard(k)
                    changed = True
            if not allowed[i]:
                remaining.discard(i)
                changed = True
        if not changed:
            break

    groups: Dict[int, List[int]] = {}
    for i in sorted(remaining):
        groups.setdefault(component[i], []).append(i)
    mecs = []
    for members in sorted(groups.values(), key=min):
        states = frozenset(members)
        met, kind = _component_kind(p, states)
        mecs.append(
            EndComponent(
                states=states,
                actions={i: tuple(sorted(allowed[i])) for i in members},
                accepting=met,
                kind=kind,
            )
        )
    logger.info(
        f"Found {len(mecs)} MEC(s): "
        + ", ".join(f"{kind.value}={sum(1 for m in mecs if m.kind is kind)}" for kind in MECKind)
    )
    return mecs


def amec_set(p: ExplicitProduct, mecs: Optional[List[EndComponent]] = None) -> List[EndComponent]:
    """MECs that meet every accepting set"""
    mecs = mec_decomposition(p) if mecs is None else mecs
    return [m for m in mecs if m.kind is MECKind.AMEC]


def amec_states(p: ExplicitProduct, mecs: Optional[List[EndComponent]] = None) -> FrozenSet[int]:
    return frozenset().union(*(m.states for m in amec_set(p, mecs)))
