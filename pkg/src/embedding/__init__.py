"""Tracking-frontier embedding of LDGBAs"""
from src.embedding.frontier import FrontierMode, FrontierSet, accepting_flags, frontier_update, membership
from src.embedding.eldgba import (
    EmbeddedRun,
    EmbeddedState,
    eldgba_step,
    embedded_lasso_accepted,
    generate_run,
    initial_embedded,
    is_accepting_embedded,
)

__all__ = [
    "FrontierMode",
    "FrontierSet",
    "accepting_flags",
    "frontier_update",
    "membership",
    "EmbeddedRun",
    "EmbeddedState",
    "eldgba_step",
    "embedded_lasso_accepted",
    "generate_run",
    "initial_embedded",
    "is_accepting_embedded",
]
