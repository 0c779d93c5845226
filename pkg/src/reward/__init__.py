"""Reward and discount shaping on the product"""
from src.reward.shaping import (
    BoundCheck,
    PathReturn,
    RewardConfig,
    check_return_bounds,
    discount,
    is_rewarded,
    path_return,
    reward,
)

__all__ = [
    "BoundCheck",
    "PathReturn",
    "RewardConfig",
    "check_return_bounds",
    "discount",
    "is_rewarded",
    "path_return",
    "reward",
]
