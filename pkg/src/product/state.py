"""
States and actions of the embedded product MDP
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet

from src.common import EMPTY_LETTER, Letter, format_letter
from src.embedding import FrontierSet


@dataclass(frozen=True)
class ProductState:
    """
    x = (s, l, q, T)

    T is the frontier before this state's own visit is credited, so flags
    (the accepting sets this state credits) depend only on the state.
    Flags are derived data and take no part in equality.
    """
    s: str
    l: Letter
    q: str
    frontier: FrontierSet
    flags: FrozenSet[int] = field(default=frozenset(), compare=False, hash=False)

    @property
    def is_sink(self) -> bool:
        return self == REJECTING_SINK

    def encode(self) -> str:
        """Canonical text form used as a key in policy and value documents"""
        return f"{self.s}|{format_letter(self.l)}|{self.q}|{self.frontier}"

    def __str__(self) -> str:
        return f"({self.s}, {format_letter(self.l)}, {self.q}, {self.frontier})"


SINK_NAME = "⊥"

REJECTING_SINK = ProductState(SINK_NAME, EMPTY_LETTER, SINK_NAME, FrontierSet(frozenset()))


class ActionKind(str, Enum):
    MDP = "mdp"
    EPSILON = "epsilon"
    HALT = "halt"


@dataclass(frozen=True)
class ProductAction:
    """An MDP action, an ε-jump to one automaton state, or the sink's self-loop"""
    kind: ActionKind
    name: str

    @classmethod
    def mdp(cls, action: str) -> "ProductAction":
        return cls(ActionKind.MDP, action)

    @classmethod
    def epsilon(cls, target: str) -> "ProductAction":
        return cls(ActionKind.EPSILON, target)

    @property
    def is_epsilon(self) -> bool:
        return self.kind is ActionKind.EPSILON

    def __str__(self) -> str:
        if self.kind is ActionKind.MDP:
            return self.name
        if self.kind is ActionKind.EPSILON:
            return f"ε:{self.name}"
        return "halt"


HALT = ProductAction(ActionKind.HALT, "halt")
