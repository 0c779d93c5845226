"""
Accepting-state reward, state-dependent discount and discounted returns

A product state is rewarded when it credits at least one pending accepting
set. Such states also use the smaller discount r_F, so the return of a path
that keeps visiting accepting sets forever tends to 1.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Protocol, Sequence

from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings

logger = logging.getLogger(__name__)


class Flagged(Protocol):
    flags: FrozenSet[int]


class RewardConfig(BaseModel):
    """r_F and γ_F, both strictly inside (0, 1)"""
    model_config = ConfigDict(frozen=True)

    r_f: float = Field(default_factory=lambda: settings.r_f, gt=0.0, lt=1.0)
    gamma_f: float = Field(default_factory=lambda: settings.gamma_f, gt=0.0, lt=1.0)


def is_rewarded(x: Flagged) -> bool:
    return bool(x.flags)


def reward(x: Flagged, cfg: RewardConfig) -> float:
    return 1.0 - cfg.r_f if x.flags else 0.0


def discount(x: Flagged, cfg: RewardConfig) -> float:
    return cfg.r_f if x.flags else cfg.gamma_f


@dataclass(frozen=True)
class PathReturn:
    value: float
    truncation_error_bound: float


def path_return(path: Sequence[Flagged], cfg: RewardConfig) -> PathReturn:
    """
    Discounted return of a finite path

    value = sum_i (prod_{j<i} γ(x_j)) · R(x_i); whatever the path would
    collect after its end is at most max(r_F, γ_F)^len(path).
    """
    if not path:
        raise ValueError("path must be nonempty")
    value = 0.0
    weight = 1.0
    for x in path:
        value += weight * reward(x, cfg)
        weight *= discount(x, cfg)
    return PathReturn(value=value, truncation_error_bound=max(cfg.r_f, cfg.gamma_f) ** len(path))


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    slacks: Dict[str, float]


def check_return_bounds(path: Sequence[Flagged], cfg: RewardConfig, allowance: float = 1e-9) -> BoundCheck:
    """
    Check 0 <= γ_F·D' <= D <= 1 - r_F + r_F·D' <= 1 for a path and its one-step suffix

    D is the return of the whole path, D' of the path without its first
    state, both truncated at the end of the path. Each slack is the margin
    of one inequality; the chain holds when none is below -allowance.
    """
    if len(path) < 2:
        raise ValueError("bound check needs a path of at least two states")
    whole = path_return(path, cfg).value
    suffix = path_return(path[1:], cfg).value
    upper = 1.0 - cfg.r_f + cfg.r_f * suffix
    slacks = {
        "lower": cfg.gamma_f * suffix,
        "suffix_below_return": whole - cfg.gamma_f * suffix,
        "return_below_upper": upper - whole,
        "upper_below_one": 1.0 - upper,
    }
    holds = all(slack >= -allowance for slack in slacks.values())
    if not holds:
        logger.debug(f"Return bounds violated: {slacks}")
    return BoundCheck(holds=holds, slacks=slacks)
