"""Experiment harness and command line interface"""
from src.cli.config import (
    PRESETS,
    ExperimentConfig,
    ExperimentMode,
    build_config,
    build_environment,
    frontier_for,
    preset_names,
    resolve_automaton,
    resolve_model,
)
from src.cli.experiment import (
    ExperimentResult,
    OracleOutcome,
    aggregate_curves,
    build_heatmap,
    compare,
    export_document,
    first_episode_reaching,
    grid_cells,
    policy_document,
    repetition_seeds,
    run_experiment,
    run_oracle,
    simulate_policy,
    write_artifacts,
    write_comparison,
)

__all__ = [
    "PRESETS",
    "ExperimentConfig",
    "ExperimentMode",
    "build_config",
    "build_environment",
    "frontier_for",
    "preset_names",
    "resolve_automaton",
    "resolve_model",
    "ExperimentResult",
    "OracleOutcome",
    "aggregate_curves",
    "build_heatmap",
    "compare",
    "export_document",
    "first_episode_reaching",
    "grid_cells",
    "policy_document",
    "repetition_seeds",
    "run_experiment",
    "run_oracle",
    "simulate_policy",
    "write_artifacts",
    "write_comparison",
]
