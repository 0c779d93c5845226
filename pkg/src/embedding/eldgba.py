"""
The embedded automaton: LDGBA states paired with a tracking frontier

States are created on demand; nothing here materializes Q x 2^f.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.automata import LDGBA, Lasso, accepting_cycle_exists
from src.common import Letter, format_letter
from src.embedding.frontier import FrontierMode, FrontierSet, accepting_flags, frontier_update

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddedState:
    q: str
    frontier: FrontierSet

    def __str__(self) -> str:
        return f"({self.q}, {self.frontier})"


def initial_embedded(a: LDGBA) -> EmbeddedState:
    return EmbeddedState(a.initial, FrontierSet.full(a.num_sets))


def eldgba_step(
    a: LDGBA,
    x: EmbeddedState,
    letter: Optional[Letter],
    mode: FrontierMode = FrontierMode.IMMEDIATE,
) -> List[Tuple[EmbeddedState, FrozenSet[int]]]:
    """
    Successors of an embedded state on a letter, or on ε when letter is None

    Args:
        a: Base automaton
        x: Current embedded state
        letter: Letter read, None for an ε-move
        mode: Frontier reset behavior

    Returns:
        (successor, flags) pairs in base-automaton order. Flags are the
        accepting sets the successor credits (see accepting_flags); the
        successor's frontier already accounts for them. Empty when the
        base automaton has no such transition.
    """
    targets = a.epsilon_successors(x.q) if letter is None else a.successors(x.q, letter)
    result = []
    for target in targets:
        flags = accepting_flags(target, x.frontier, a.accepting)
        result.append((EmbeddedState(target, frontier_update(target, x.frontier, a.accepting, mode)), flags))
    return result


def is_accepting_embedded(a: LDGBA, x: EmbeddedState, j: int) -> bool:
    """True iff the visit to q credits F_j under x's frontier"""
    if not 0 <= j < a.num_sets:
        raise IndexError(f"accepting set index {j} outside 0..{a.num_sets - 1}")
    return j in accepting_flags(x.q, x.frontier, a.accepting)


@dataclass
class EmbeddedRun:
    """A finite run; flags[i] belongs to the move from states[i] to states[i + 1]"""
    states: List[EmbeddedState] = field(default_factory=list)
    flags: List[FrozenSet[int]] = field(default_factory=list)
    diagnostic: Optional[str] = None

    @property
    def truncated(self) -> bool:
        return self.diagnostic is not None

    def flag_counts(self, num_sets: int) -> List[int]:
        return [sum(1 for f in self.flags if j in f) for j in range(num_sets)]


def generate_run(
    a: LDGBA,
    word: Sequence[Letter],
    length: int,
    mode: FrontierMode = FrontierMode.IMMEDIATE,
    epsilon_at: Iterable[int] = (),
) -> EmbeddedRun:
    """
    Run the embedded automaton over the first `length` letters of a word

    Starts at (q0, full frontier). At each position the next base state is
    chosen, its acceptance is checked against the current frontier, and only
    then is the frontier updated. Nondeterministic choices take the first
    successor. Positions listed in epsilon_at take the first ε-move before
    reading their letter.
    """
    if length > len(word):
        raise ValueError(f"run length {length} exceeds word length {len(word)}")
    jumps = set(epsilon_at)
    current = initial_embedded(a)
    run = EmbeddedRun(states=[current])

    def advance(letter: Optional[Letter], where: str) -> bool:
        nonlocal current
        steps = eldgba_step(a, current, letter, mode)
        if not steps:
            run.diagnostic = f"no transition from {current.q} on {where}"
            logger.warning(f"Run truncated after {len(run.flags)} step(s): {run.diagnostic}")
            return False
        if len(steps) > 1:
            logger.warning(f"Nondeterministic move from {current.q} on {where}; taking {steps[0][0].q}")
        current, flags = steps[0]
        run.states.append(current)
        run.flags.append(flags)
        return True

    for position in range(length):
        if position in jumps and not advance(None, "ε"):
            break
        if not advance(word[position], format_letter(word[position])):
            break
    return run


def embedded_lasso_accepted(a: LDGBA, w: Lasso, mode: FrontierMode = FrontierMode.IMMEDIATE) -> bool:
    """
    Generalized Büchi acceptance of u·v^ω by the embedded automaton

    Explores (q, frontier, position) nodes, raising on each edge the
    accepting sets credited by that move.
    """
    for letter in w.letters():
        a.check_letter(letter)

    def successors(node):
        x, position = node
        for target, flags in eldgba_step(a, x, None, mode):
            yield (target, position), flags
        nxt = w.next_position(position)
        for target, flags in eldgba_step(a, x, w.letter_at(position), mode):
            yield (target, nxt), flags

    return accepting_cycle_exists((initial_embedded(a), 0), successors, a.num_sets)
