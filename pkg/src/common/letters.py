"""
Letters over atomic propositions.

A letter is a set of propositions (an element of 2^Π). Letters are kept as
frozensets in memory and as sorted proposition lists in documents.
"""
from itertools import combinations
from typing import FrozenSet, Iterable, List, Tuple

Letter = FrozenSet[str]

EMPTY_LETTER: Letter = frozenset()


def make_letter(props: Iterable[str]) -> Letter:
    return frozenset(props)


def letter_key(letter: Letter) -> Tuple[str, ...]:
    """Canonical sorted form, used for ordering and serialization"""
    return tuple(sorted(letter))


def format_letter(letter: Letter) -> str:
    return "{" + ",".join(letter_key(letter)) + "}"


def all_letters(props: Iterable[str]) -> List[Letter]:
    """Enumerate 2^Π in a fixed order (by size, then lexicographically)"""
    ordered = sorted(set(props))
    letters: List[Letter] = []
    for size in range(len(ordered) + 1):
        for combo in combinations(ordered, size):
            letters.append(frozenset(combo))
    return letters
