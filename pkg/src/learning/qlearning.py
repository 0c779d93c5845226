"""
Tabular Q-learning on the EP-MDP

Each update uses the reward and discount of the state being left:
Q(x,u) <- (1 - α) Q(x,u) + α [R(x) + γ(x) max_u' Q(x',u')].
Exploration is ε-greedy with ε = 1/episode; α is 1/Count(x,u) by default.
With r_F close to 1 that schedule closes the gap to the fixed point only
polynomially slowly inside accepting components, so Count^-ω (ω in (0.5, 1])
is offered for runs that must get close to the optimal values.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from src.automata import LDGBA
from src.embedding import FrontierMode
from src.learning.qtable import Policy, QTable, extract_policy, extract_values
from src.mdp import PLMDP
from src.product import EPMDPEnvironment, ProductAction, ProductState
from src.reward import RewardConfig

logger = logging.getLogger(__name__)


class AlphaSchedule(str, Enum):
    INVERSE_COUNT = "inverse_count"
    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"


class LearnConfig(BaseModel):
    """Episode loop controls"""
    model_config = ConfigDict(frozen=True)

    episodes: int = Field(default_factory=lambda: settings.episodes, ge=1)
    tau: int = Field(default_factory=lambda: settings.tau, ge=1)
    epsilon_floor: float = Field(default_factory=lambda: settings.epsilon_floor, ge=0.0, le=1.0)
    alpha_schedule: AlphaSchedule = AlphaSchedule.INVERSE_COUNT
    alpha: float = Field(default=0.1, gt=0.0, le=1.0)
    alpha_exponent: float = Field(default=0.6, gt=0.5, le=1.0)
    seed: int = Field(default_factory=lambda: settings.seed, ge=0)
    convergence_window: int = Field(default_factory=lambda: settings.convergence_window, ge=1)
    convergence_threshold: float = Field(default_factory=lambda: settings.convergence_threshold, gt=0.0)
    min_episodes: int = Field(default_factory=lambda: settings.min_episodes, ge=0)
    stop_on_convergence: bool = True
    reward: RewardConfig = Field(default_factory=RewardConfig)

    def epsilon(self, episode: int) -> float:
        return max(1.0 / episode, self.epsilon_floor)

    def step_size(self, count: int) -> float:
        if self.alpha_schedule is AlphaSchedule.CONSTANT:
            return self.alpha
        if self.alpha_schedule is AlphaSchedule.POLYNOMIAL:
            return count ** -self.alpha_exponent
        return 1.0 / count


def q_update(
    table: QTable,
    x: ProductState,
    u: ProductAction,
    r: float,
    gamma: float,
    x_next: ProductState,
    next_actions: Sequence[ProductAction],
    alpha: float,
) -> float:
    """
    One Q-learning backup; unseen entries count as 0

    Returns:
        The new Q(x, u)
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"step size must lie in (0, 1], got {alpha}")
    target = r + gamma * table.value(x_next, next_actions)
    value = (1.0 - alpha) * table.get(x, u) + alpha * target
    table.set(x, u, value)
    return value


@dataclass
class EpisodeResult:
    steps: int
    cumulative_reward: float
    max_value_change: float
    trace: List[Tuple[ProductState, ProductAction, float]] = field(default_factory=list)


def select_action(
    table: QTable,
    x: ProductState,
    actions: Sequence[ProductAction],
    epsilon: float,
    rng: np.random.Generator,
) -> ProductAction:
    if rng.random() < epsilon:
        return actions[int(rng.integers(len(actions)))]
    return table.best(x, actions)[0]


def run_episode(
    env: EPMDPEnvironment,
    table: QTable,
    cfg: LearnConfig,
    episode: int,
    rng: np.random.Generator,
    record: bool = True,
) -> EpisodeResult:
    """
    One episode of at most tau steps from x0

    The episode also ends when the rejecting sink is reached.
    """
    epsilon = cfg.epsilon(episode)
    x = env.initial_state()
    actions = env.available_actions(x)
    table.register(x, actions)
    result = EpisodeResult(steps=0, cumulative_reward=0.0, max_value_change=0.0)
    for _ in range(cfg.tau):
        u = select_action(table, x, actions, epsilon, rng)
        step = env.product_step(x, u, rng)
        next_actions = env.available_actions(step.state)
        table.register(step.state, next_actions)
        alpha = cfg.step_size(table.increment(x, u))
        before = table.value(x, actions)
        q_update(table, x, u, step.reward, step.discount, step.state, next_actions, alpha)
        result.max_value_change = max(result.max_value_change, abs(table.value(x, actions) - before))
        result.cumulative_reward += step.reward
        result.steps += 1
        if record:
            result.trace.append((x, u, step.reward))
        if step.rejected:
            break
        x, actions = step.state, next_actions
    return result


@dataclass
class EpisodeStats:
    episode: int
    cumulative_reward: float
    steps: int
    value_at_x0: float


@dataclass
class TrainingResult:
    table: QTable
    policy: Policy
    values: Dict[ProductState, float]
    curve: List[EpisodeStats]
    converged: bool
    initial_state: ProductState

    @property
    def episodes_run(self) -> int:
        return len(self.curve)

    @property
    def value_at_x0(self) -> float:
        return self.values.get(self.initial_state, 0.0)


def train_environment(
    env: EPMDPEnvironment,
    cfg: Optional[LearnConfig] = None,
    table: Optional[QTable] = None,
) -> TrainingResult:
    """
    Run episodes until the budget is spent or the values settle

    Values have settled when the largest per-episode change of max_u Q over
    the last convergence_window episodes is below the threshold; this is
    only checked once min_episodes have run.
    """
    cfg = cfg or LearnConfig()
    if table is None:
        table = QTable()
    rng = np.random.default_rng(cfg.seed)
    x0 = env.initial_state()
    changes: deque = deque(maxlen=cfg.convergence_window)
    curve: List[EpisodeStats] = []
    converged = False
    for episode in range(1, cfg.episodes + 1):
        result = run_episode(env, table, cfg, episode, rng, record=False)
        changes.append(result.max_value_change)
        curve.append(EpisodeStats(episode, result.cumulative_reward, result.steps, table.value(x0)))
        logger.debug(
            f"Episode {episode}: {result.steps} steps, reward {result.cumulative_reward:.4f}, "
            f"max dV {result.max_value_change:.2e}"
        )
        if (
            episode >= cfg.min_episodes
            and len(changes) == cfg.convergence_window
            and max(changes) < cfg.convergence_threshold
        ):
            converged = True
            if cfg.stop_on_convergence:
                break

    policy = extract_policy(table)
    values = extract_values(table)
    logger.info(
        f"Training finished after {len(curve)} episode(s) "
        f"({'converged' if converged else 'budget exhausted'}); "
        f"{len(table.actions)} states seen, value at x0 {table.value(x0):.4f}"
    )
    return TrainingResult(table, policy, values, curve, converged, x0)


def train(
    model: PLMDP,
    automaton: LDGBA,
    cfg: Optional[LearnConfig] = None,
    mode: FrontierMode = FrontierMode.IMMEDIATE,
) -> TrainingResult:
    cfg = cfg or LearnConfig()
    env = EPMDPEnvironment(model, automaton, mode, cfg.reward)
    return train_environment(env, cfg)
