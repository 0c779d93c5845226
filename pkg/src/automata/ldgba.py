"""
Limit-deterministic generalized Büchi automata

The state set is split into a deterministic part Q_D and a
nondeterministic part Q_N. Inside Q_D every letter has exactly one
successor, which stays in Q_D; ε-moves only jump from Q_N into Q_D; all
accepting sets live in Q_D.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Tuple

from src.common import Letter, UnknownPropositionError, ValidationReport, all_letters, format_letter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LDGBA:
    """Automaton over the alphabet 2^props; accepting sets are indexed from 0"""
    props: FrozenSet[str]
    states: Tuple[str, ...]
    initial: str
    q_d: FrozenSet[str]
    q_n: FrozenSet[str]
    transitions: Mapping[Tuple[str, Letter], Tuple[str, ...]]
    epsilon: Mapping[str, Tuple[str, ...]]
    accepting: Tuple[FrozenSet[str], ...]
    name: str = field(default="automaton", compare=False)

    @property
    def num_sets(self) -> int:
        return len(self.accepting)

    @cached_property
    def letters(self) -> List[Letter]:
        return all_letters(self.props)

    @cached_property
    def _membership(self) -> Dict[str, FrozenSet[int]]:
        return {
            q: frozenset(j for j, f_set in enumerate(self.accepting) if q in f_set)
            for q in self.states
        }

    def accepting_indices(self, q: str) -> FrozenSet[int]:
        """Indices j with q in F_j"""
        return self._membership.get(q, frozenset())

    def successors(self, q: str, letter: Letter) -> Tuple[str, ...]:
        return self.transitions.get((q, letter), ())

    def epsilon_successors(self, q: str) -> Tuple[str, ...]:
        return self.epsilon.get(q, ())

    def project(self, label: Letter) -> Letter:
        """Restrict an environment label to the propositions this automaton reads"""
        return label & self.props

    def check_letter(self, letter: Letter) -> None:
        unknown = set(letter) - self.props
        if unknown:
            raise UnknownPropositionError(
                f"letter {format_letter(letter)} uses unknown proposition(s) {sorted(unknown)}"
            )


def validate_ldgba(a: LDGBA) -> ValidationReport:
    """
    Check the limit-deterministic structure

    Returns:
        ValidationReport naming each violated condition with a (state, letter) witness
    """
    report = ValidationReport(subject=f"LDGBA '{a.name}'")
    states = set(a.states)

    if a.initial not in states:
        report.add("unknown-state", "initial", a.initial)
    if a.q_d & a.q_n:
        report.add("partition-overlap", "Q_D ∩ Q_N", ",".join(sorted(a.q_d & a.q_n)))
    uncovered = states - (a.q_d | a.q_n)
    if uncovered:
        report.add("partition-incomplete", "Q_D ∪ Q_N", ",".join(sorted(uncovered)))
    stray = (a.q_d | a.q_n) - states
    if stray:
        report.add("unknown-state", "partition", ",".join(sorted(stray)))
    if not a.accepting:
        report.add("no-accepting-sets", "accepting")

    for (q, letter), targets in a.transitions.items():
        if q not in states:
            report.add("unknown-state", f"transition from {q}", q)
        unknown = set(letter) - a.props
        if unknown:
            report.add("unknown-proposition", f"({q}, {format_letter(letter)})", ",".join(sorted(unknown)))
        for target in targets:
            if target not in states:
                report.add("unknown-state", f"({q}, {format_letter(letter)})", target)

    for q in a.states:
        if q not in a.q_d:
            continue
        for letter in a.letters:
            targets = a.successors(q, letter)
            witness = f"({q}, {format_letter(letter)})"
            if not targets:
                report.add("deterministic-not-total", witness)
            elif len(targets) > 1:
                report.add("deterministic-branching", witness, ",".join(targets))
            for target in targets:
                if target not in a.q_d:
                    report.add("deterministic-escapes", witness, target)
        if a.epsilon_successors(q):
            report.add("epsilon-from-deterministic", f"({q}, ε)", ",".join(a.epsilon_successors(q)))

    for q, targets in a.epsilon.items():
        if q in a.q_n:
            for target in targets:
                if target not in a.q_d:
                    report.add("epsilon-target-not-deterministic", f"({q}, ε)", target)
        elif q not in states:
            report.add("unknown-state", f"({q}, ε)", q)

    for j, f_set in enumerate(a.accepting):
        outside = f_set - a.q_d
        if outside:
            report.add("accepting-outside-deterministic", f"F_{j}", ",".join(sorted(outside)))

    if not report.ok:
        logger.debug(report.describe())
    return report
