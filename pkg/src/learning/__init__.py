"""Tabular Q-learning on the embedded product"""
from src.learning.qtable import Policy, QTable, extract_policy, extract_values
from src.learning.qlearning import (
    AlphaSchedule,
    EpisodeResult,
    EpisodeStats,
    LearnConfig,
    TrainingResult,
    q_update,
    run_episode,
    select_action,
    train,
    train_environment,
)

__all__ = [
    "Policy",
    "QTable",
    "extract_policy",
    "extract_values",
    "AlphaSchedule",
    "EpisodeResult",
    "EpisodeStats",
    "LearnConfig",
    "TrainingResult",
    "q_update",
    "run_episode",
    "select_action",
    "train",
    "train_environment",
]
