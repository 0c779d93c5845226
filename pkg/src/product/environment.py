"""
The EP-MDP as a sampled environment

The automaton reads the label observed on arrival: stepping from
x = (s, l, q, T) with MDP action a draws s' and l', moves the automaton to
q' = δ(q, l') and credits q's own visit in the frontier, giving
x' = (s', l', q', f_V(q, T)). x0 = (s0, l0, q0, full frontier) does not read
l0. An ε-action keeps (s, l) and jumps q to one ε-successor.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from src.automata import LDGBA
from src.common import Letter, UnavailableActionError, format_letter
from src.embedding import FrontierMode, FrontierSet, accepting_flags, frontier_update
from src.mdp import PLMDP, sample_step
from src.product.state import HALT, REJECTING_SINK, ActionKind, ProductAction, ProductState
from src.reward import RewardConfig, discount, reward

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepResult:
    state: ProductState
    reward: float
    discount: float
    flags: FrozenSet[int]
    rejected: bool = False


class EPMDPEnvironment:
    """Model-free view of the product of a PL-MDP and an LDGBA"""

    def __init__(
        self,
        model: PLMDP,
        automaton: LDGBA,
        mode: FrontierMode = FrontierMode.IMMEDIATE,
        reward_config: Optional[RewardConfig] = None,
    ):
        self.model = model
        self.automaton = automaton
        self.mode = FrontierMode(mode)
        self.reward_config = reward_config or RewardConfig()
        self._actions: Dict[ProductState, Tuple[ProductAction, ...]] = {}
        self._warned: Set[Tuple[str, Letter]] = set()
        unread = sorted(automaton.props - model.atomic_props)
        if unread:
            logger.warning(f"Automaton '{automaton.name}' reads propositions the model never emits: {unread}")

    def make_state(self, s: str, l: Letter, q: str, frontier: FrontierSet) -> ProductState:
        return ProductState(s, l, q, frontier, flags=accepting_flags(q, frontier, self.automaton.accepting))

    def initial_state(self) -> ProductState:
        return self.start_state(self.model.initial_state, self.model.initial_label)

    def start_state(self, s: str, l: Optional[Letter] = None) -> ProductState:
        """(s, l, q0, full frontier); l defaults to the most probable label of s"""
        if l is None:
            l = max(self.model.label_distribution(s), key=lambda item: item[1])[0]
        frontier = FrontierSet.full(self.automaton.num_sets)
        return self.make_state(s, frozenset(l), self.automaton.initial, frontier)

    def available_actions(self, x: ProductState) -> Tuple[ProductAction, ...]:
        """A(s) in model order, then one ε-action per ε-successor of q"""
        cached = self._actions.get(x)
        if cached is not None:
            return cached
        if x.is_sink:
            actions: Tuple[ProductAction, ...] = (HALT,)
        else:
            actions = tuple(ProductAction.mdp(a) for a in self.model.available_actions(x.s))
            if x.q in self.automaton.q_n:
                actions += tuple(ProductAction.epsilon(t) for t in self.automaton.epsilon_successors(x.q))
        self._actions[x] = actions
        return actions

    def _next_q(self, q: str, label: Letter) -> Optional[str]:
        letter = self.automaton.project(label)
        targets = self.automaton.successors(q, letter)
        if not targets:
            return None
        if len(targets) > 1 and (q, letter) not in self._warned:
            self._warned.add((q, letter))
            logger.warning(
                f"Automaton '{self.automaton.name}' branches from {q} on {format_letter(letter)}; "
                f"following {targets[0]}"
            )
        return targets[0]

    def _check(self, x: ProductState, u: ProductAction) -> None:
        if u not in self.available_actions(x):
            raise UnavailableActionError(str(x), str(u))

    def successors(self, x: ProductState, u: ProductAction) -> List[Tuple[ProductState, float]]:
        """Exact distribution p^P(x, u, .), duplicates merged, in draw order"""
        self._check(x, u)
        if u.kind is ActionKind.HALT:
            return [(x, 1.0)]
        frontier = frontier_update(x.q, x.frontier, self.automaton.accepting, self.mode)
        if u.kind is ActionKind.EPSILON:
            return [(self.make_state(x.s, x.l, u.name, frontier), 1.0)]
        mass: Dict[ProductState, float] = {}
        for s_next, p_s in self.model.successors(x.s, u.name):
            for label, p_l in self.model.label_distribution(s_next):
                q_next = self._next_q(x.q, label)
                target = REJECTING_SINK if q_next is None else self.make_state(s_next, label, q_next, frontier)
                mass[target] = mass.get(target, 0.0) + p_s * p_l
        return list(mass.items())

    def product_step(self, x: ProductState, u: ProductAction, rng: np.random.Generator) -> StepResult:
        """
        Sample one product transition

        Reward and discount are those of the source state x; flags are the
        accepting sets x credits. A missing automaton transition lands in
        the absorbing rejecting sink.
        """
        self._check(x, u)
        cfg = self.reward_config
        if u.kind is ActionKind.HALT:
            nxt = x
        elif u.kind is ActionKind.EPSILON:
            frontier = frontier_update(x.q, x.frontier, self.automaton.accepting, self.mode)
            nxt = self.make_state(x.s, x.l, u.name, frontier)
        else:
            s_next, label = sample_step(self.model, x.s, u.name, rng)
            q_next = self._next_q(x.q, label)
            if q_next is None:
                nxt = REJECTING_SINK
            else:
                frontier = frontier_update(x.q, x.frontier, self.automaton.accepting, self.mode)
                nxt = self.make_state(s_next, label, q_next, frontier)
        return StepResult(
            state=nxt,
            reward=reward(x, cfg),
            discount=discount(x, cfg),
            flags=x.flags,
            rejected=nxt.is_sink,
        )
