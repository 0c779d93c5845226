"""
Probabilistic labeled MDP - finite model with uncertain motion and uncertain labels

A PL-MDP pairs an ordinary transition kernel p_S(s, a, s') with a
probabilistic labeling p_L(s, l): every time the agent lands in s it
observes one label l drawn from p_L(s, .).
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Tuple

import numpy as np

from config.settings import settings
from src.common import (
    Letter,
    UnavailableActionError,
    ValidationReport,
    format_letter,
)

logger = logging.getLogger(__name__)

Row = Tuple[Tuple[str, float], ...]
LabelRow = Tuple[Tuple[Letter, float], ...]


@dataclass(frozen=True)
class PLMDP:
    """Finite probabilistic labeled MDP, immutable after construction"""
    states: Tuple[str, ...]
    actions: Tuple[str, ...]
    atomic_props: FrozenSet[str]
    transitions: Mapping[Tuple[str, str], Row]
    labels: Mapping[str, LabelRow]
    initial_state: str
    initial_label: Letter
    name: str = field(default="model", compare=False)

    @cached_property
    def state_index(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def _available(self) -> Dict[str, Tuple[str, ...]]:
        available: Dict[str, List[str]] = {s: [] for s in self.states}
        for action in self.actions:
            for s in self.states:
                if (s, action) in self.transitions:
                    available[s].append(action)
        return {s: tuple(acts) for s, acts in available.items()}

    @cached_property
    def _cumulative(self) -> Dict[object, Tuple[tuple, np.ndarray]]:
        table: Dict[object, Tuple[tuple, np.ndarray]] = {}
        for key, row in self.transitions.items():
            table[key] = (tuple(t for t, _ in row), np.cumsum([p for _, p in row]))
        for s, row in self.labels.items():
            table[s] = (tuple(l for l, _ in row), np.cumsum([p for _, p in row]))
        return table

    def available_actions(self, s: str) -> Tuple[str, ...]:
        """A(s) in model action order"""
        return self._available.get(s, ())

    def successors(self, s: str, a: str) -> Row:
        if (s, a) not in self.transitions:
            raise UnavailableActionError(s, a)
        return self.transitions[(s, a)]

    def label_distribution(self, s: str) -> LabelRow:
        return self.labels.get(s, ())

    def label_probability(self, s: str, label: Letter) -> float:
        return math.fsum(p for l, p in self.label_distribution(s) if l == label)

    def _draw(self, key, rng: np.random.Generator):
        outcomes, cumulative = self._cumulative[key]
        index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        return outcomes[min(index, len(outcomes) - 1)]

    def sample_label(self, s: str, rng: np.random.Generator) -> Letter:
        return self._draw(s, rng)


def sample_step(m: PLMDP, s: str, a: str, rng: np.random.Generator) -> Tuple[str, Letter]:
    """
    Sample one move of the PL-MDP

    Args:
        m: Model
        s: Current state
        a: Action, must belong to A(s)
        rng: Random stream owned by the caller

    Returns:
        (s', l') with s' ~ p_S(s, a, .) and l' ~ p_L(s', .)
    """
    if (s, a) not in m.transitions:
        raise UnavailableActionError(s, a)
    next_state = m._draw((s, a), rng)
    return next_state, m.sample_label(next_state, rng)


def validate_plmdp(m: PLMDP, tolerance: float = None) -> ValidationReport:
    """
    Check the PL-MDP invariants

    Returns:
        ValidationReport listing every violated invariant with its location
    """
    tol = settings.probability_tolerance if tolerance is None else tolerance
    report = ValidationReport(subject=f"PL-MDP '{m.name}'")
    known_states = set(m.states)
    known_actions = set(m.actions)

    if len(known_states) != len(m.states):
        report.add("duplicate-state", "states")

    for (s, a), row in m.transitions.items():
        location = f"transition ({s}, {a})"
        if s not in known_states:
            report.add("unknown-state", location, s)
        if a not in known_actions:
            report.add("unknown-action", location, a)
        for target, p in row:
            if target not in known_states:
                report.add("unknown-state", location, target)
            if p < 0.0 or p > 1.0:
                report.add("probability-range", location, f"p={p}")
        total = math.fsum(p for _, p in row)
        if abs(total - 1.0) > tol:
            report.add("transition-stochastic", location, f"sum={total!r}")

    for s in m.states:
        if not m.available_actions(s):
            report.add("empty-action-set", f"state {s}")
        row = m.label_distribution(s)
        for label, p in row:
            unknown = set(label) - set(m.atomic_props)
            if unknown:
                report.add("unknown-proposition", f"labels of {s}", ",".join(sorted(unknown)))
            if p < 0.0 or p > 1.0:
                report.add("probability-range", f"labels of {s}", f"p={p}")
        total = math.fsum(p for _, p in row)
        if abs(total - 1.0) > tol:
            report.add("label-stochastic", f"labels of {s}", f"sum={total!r}")

    for s in m.labels:
        if s not in known_states:
            report.add("unknown-state", "labels", s)

    if m.initial_state not in known_states:
        report.add("unknown-state", "initial", m.initial_state)
    elif m.label_probability(m.initial_state, m.initial_label) <= 0.0:
        report.add(
            "initial-label",
            f"state {m.initial_state}",
            f"p_L({m.initial_state}, {format_letter(m.initial_label)}) = 0",
        )

    if not report.ok:
        logger.debug(report.describe())
    return report
