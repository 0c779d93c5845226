"""
Tabular action values and the greedy policies read from them
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.common import PolicyGapError
from src.product import ProductAction, ProductState

logger = logging.getLogger(__name__)

Key = Tuple[ProductState, ProductAction]


class QTable:
    """
    Q(x, u) and Count(x, u), created lazily with value 0

    The table remembers the action list of every state it has seen, so a
    greedy policy can be read off without the environment.
    """

    def __init__(self):
        self.values: Dict[Key, float] = {}
        self.counts: Dict[Key, int] = {}
        self.actions: Dict[ProductState, Tuple[ProductAction, ...]] = {}

    def register(self, x: ProductState, actions: Sequence[ProductAction]) -> None:
        if x not in self.actions:
            self.actions[x] = tuple(actions)

    def get(self, x: ProductState, u: ProductAction) -> float:
        return self.values.get((x, u), 0.0)

    def set(self, x: ProductState, u: ProductAction, value: float) -> None:
        self.values[(x, u)] = value

    def count(self, x: ProductState, u: ProductAction) -> int:
        return self.counts.get((x, u), 0)

    def increment(self, x: ProductState, u: ProductAction) -> int:
        n = self.counts.get((x, u), 0) + 1
        self.counts[(x, u)] = n
        return n

    def best(self, x: ProductState, actions: Optional[Sequence[ProductAction]] = None) -> Tuple[ProductAction, float]:
        """Greedy action and its value; ties go to the lowest action index"""
        actions = self.actions[x] if actions is None else actions
        best_u, best_v = actions[0], self.get(x, actions[0])
        for u in actions[1:]:
            v = self.get(x, u)
            if v > best_v:
                best_u, best_v = u, v
        return best_u, best_v

    def value(self, x: ProductState, actions: Optional[Sequence[ProductAction]] = None) -> float:
        actions = self.actions.get(x, ()) if actions is None else actions
        if not actions:
            return 0.0
        return max(self.get(x, u) for u in actions)

    def states(self) -> List[ProductState]:
        return list(self.actions)

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class Policy:
    """Deterministic memoryless policy on product states"""
    choices: Dict[ProductState, ProductAction] = field(default_factory=dict)

    def action(self, x: ProductState) -> ProductAction:
        if x not in self.choices:
            raise PolicyGapError(x)
        return self.choices[x]

    def __contains__(self, x: object) -> bool:
        return x in self.choices

    def __len__(self) -> int:
        return len(self.choices)

    def to_document(self) -> Dict[str, str]:
        return {x.encode(): str(u) for x, u in self.choices.items()}

    @classmethod
    def from_mapping(cls, mapping: Mapping[ProductState, ProductAction]) -> "Policy":
        return cls(dict(mapping))


def extract_policy(table: QTable) -> Policy:
    """argmax_u Q(x, u) at every state the table has seen"""
    return Policy({x: table.best(x)[0] for x in table.states()})


def extract_values(table: QTable, states: Optional[Iterable[ProductState]] = None) -> Dict[ProductState, float]:
    """max_u Q(x, u) at every seen state (or at the given states, 0 when unseen)"""
    states = table.states() if states is None else states
    return {x: table.value(x) for x in states}
