"""
Lassos - ultimately periodic words u·v^ω - and exact acceptance on them
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, FrozenSet, Hashable, Iterable, Sequence, Tuple

import networkx as nx
import numpy as np

from src.automata.ldgba import LDGBA
from src.common import Letter, format_letter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Lasso:
    """The word prefix · cycle^ω"""
    prefix: Tuple[Letter, ...]
    cycle: Tuple[Letter, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @classmethod
    def of(cls, prefix: Sequence[Iterable[str]], cycle: Sequence[Iterable[str]]) -> "Lasso":
        return cls(tuple(frozenset(l) for l in prefix), tuple(frozenset(l) for l in cycle))

    @property
    def length(self) -> int:
        return len(self.prefix) + len(self.cycle)

    def letter_at(self, position: int) -> Letter:
        if position < len(self.prefix):
            return self.prefix[position]
        return self.cycle[position - len(self.prefix)]

    def next_position(self, position: int) -> int:
        nxt = position + 1
        return nxt if nxt < self.length else len(self.prefix)

    def word(self, length: int) -> Tuple[Letter, ...]:
        """First `length` letters of the infinite word"""
        letters = []
        position = 0
        for _ in range(length):
            letters.append(self.letter_at(position))
            position = self.next_position(position)
        return tuple(letters)

    def rotated(self, k: int = 1) -> "Lasso":
        """Same word, with k cycle letters moved into the prefix"""
        k %= len(self.cycle)
        return Lasso(self.prefix + self.cycle[:k], self.cycle[k:] + self.cycle[:k])

    def unrolled(self, k: int) -> "Lasso":
        """Same word, with the cycle repeated k times"""
        return Lasso(self.prefix, self.cycle * k)

    def letters(self) -> Tuple[Letter, ...]:
        return self.prefix + self.cycle

    def __str__(self) -> str:
        prefix = "".join(format_letter(l) for l in self.prefix)
        cycle = "".join(format_letter(l) for l in self.cycle)
        return f"{prefix}({cycle})^ω"


Successors = Callable[[Hashable], Iterable[Tuple[Hashable, FrozenSet[int]]]]


def accepting_cycle_exists(initial: Hashable, successors: Successors, num_sets: int) -> bool:
    """
    Generalized Büchi non-emptiness on a finite graph given on the fly

    Args:
        initial: Start node
        successors: Node -> iterable of (successor, accepting-set flags on that edge)
        num_sets: Number of accepting sets

    Returns:
        True iff a reachable strongly connected component has an internal
        cycle whose edges raise every flag 0..num_sets-1
    """
    graph = nx.DiGraph()
    graph.add_node(initial)
    queue = deque([initial])
    while queue:
        node = queue.popleft()
        for succ, flags in successors(node):
            if graph.has_edge(node, succ):
                graph[node][succ]["flags"] |= set(flags)
            else:
                if succ not in graph:
                    queue.append(succ)
                graph.add_edge(node, succ, flags=set(flags))

    required = set(range(num_sets))
    for component in nx.strongly_connected_components(graph):
        seen = set()
        internal = False
        for u in component:
            for v in graph.successors(u):
                if v in component:
                    internal = True
                    seen |= graph[u][v]["flags"]
        if internal and required <= seen:
            return True
    return False


def lasso_accepted(a: LDGBA, w: Lasso) -> bool:
    """
    Decide whether the automaton accepts u·v^ω

    Explores (automaton state, lasso position) nodes. Letter edges advance
    the position, ε-edges keep it; an edge raises flag j when its target is
    in F_j.
    """
    for letter in w.letters():
        a.check_letter(letter)

    def successors(node):
        q, position = node
        for target in a.epsilon_successors(q):
            yield (target, position), a.accepting_indices(target)
        nxt = w.next_position(position)
        for target in a.successors(q, w.letter_at(position)):
            yield (target, nxt), a.accepting_indices(target)

    return accepting_cycle_exists((a.initial, 0), successors, a.num_sets)


def random_lasso(
    rng: np.random.Generator,
    props: Iterable[str],
    max_prefix: int = 4,
    max_cycle: int = 4,
    density: float = 0.3,
) -> Lasso:
    """
    Draw a random lasso over 2^props

    Args:
        rng: Random stream
        props: Propositions letters are drawn from
        max_prefix: Longest prefix (inclusive)
        max_cycle: Longest cycle (inclusive, at least 1)
        density: Probability that each proposition appears in a letter
    """
    ordered = sorted(props)

    def letter() -> Letter:
        return frozenset(p for p in ordered if rng.random() < density)

    prefix_len = int(rng.integers(0, max_prefix + 1))
    cycle_len = int(rng.integers(1, max_cycle + 1))
    return Lasso(
        tuple(letter() for _ in range(prefix_len)),
        tuple(letter() for _ in range(cycle_len)),
    )
