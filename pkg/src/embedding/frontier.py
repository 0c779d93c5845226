"""
Tracking frontier - the accepting sets still owed in the current round
"""
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, Sequence


class FrontierMode(str, Enum):
    """How the frontier reacts when a round completes"""
    IMMEDIATE = "immediate"  # reset in the step that empties it
    DEFERRED = "deferred"  # stay empty until the next accepting visit
    FROZEN = "frozen"  # never track: the conventional product


@dataclass(frozen=True)
class FrontierSet:
    """Pending accepting-set indices, stored as a frozenset and readable as a bit mask"""
    pending: FrozenSet[int]

    @classmethod
    def full(cls, num_sets: int) -> "FrontierSet":
        return cls(frozenset(range(num_sets)))

    @classmethod
    def of(cls, indices: Iterable[int]) -> "FrontierSet":
        return cls(frozenset(indices))

    @classmethod
    def from_mask(cls, mask: int) -> "FrontierSet":
        return cls(frozenset(j for j in range(mask.bit_length()) if mask >> j & 1))

    @property
    def mask(self) -> int:
        return sum(1 << j for j in self.pending)

    def __contains__(self, j: object) -> bool:
        return j in self.pending

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.pending))

    def __len__(self) -> int:
        return len(self.pending)

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in self) + "}"


def membership(q: str, accepting: Sequence[FrozenSet[str]]) -> FrozenSet[int]:
    return frozenset(j for j, f_set in enumerate(accepting) if q in f_set)


def completes_round(owned: FrozenSet[int], t: FrontierSet) -> bool:
    """True when a visit owning these sets leaves nothing pending"""
    return bool(owned) and t.pending <= owned


def accepting_flags(q: str, t: FrontierSet, accepting: Sequence[FrozenSet[str]]) -> FrozenSet[int]:
    """
    Accepting sets credited by a visit to q under frontier t

    A visit that closes the round (every pending set contains q, or nothing
    is pending) also opens the next one, so every set containing q is
    credited. Otherwise only the pending sets containing q are.
    """
    owned = membership(q, accepting)
    if completes_round(owned, t):
        return owned
    return owned & t.pending


def frontier_update(
    q: str,
    t: FrontierSet,
    accepting: Sequence[FrozenSet[str]],
    mode: FrontierMode = FrontierMode.IMMEDIATE,
) -> FrontierSet:
    """
    Frontier after visiting q

    Args:
        q: Visited automaton state
        t: Frontier before the visit
        accepting: Accepting sets F_0..F_{f-1}
        mode: Reset behavior

    Returns:
        t without every pending set containing q. In IMMEDIATE mode a visit
        that closes the round restarts at the full set minus the sets
        containing q (the full set when q is in all of them). DEFERRED mode
        leaves a closed round empty until the next accepting visit. FROZEN
        always returns the full set.
    """
    mode = FrontierMode(mode)
    full = frozenset(range(len(accepting)))
    if mode is FrontierMode.FROZEN:
        return FrontierSet(full)
    owned = membership(q, accepting)
    if not owned or (t.pending and not owned & t.pending):
        return t
    if not completes_round(owned, t):
        return FrontierSet(t.pending - owned)
    if mode is FrontierMode.DEFERRED:
        # a pending round closes into the empty frontier; an empty one restarts
        return FrontierSet(full - owned if not t.pending else frozenset())
    return FrontierSet(full - owned or full)
