"""
Experiment configuration, presets and model / automaton resolution
"""
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from config.settings import settings
from src.automata import LDGBA, builtin_automaton, builtin_automaton_names, degeneralize, load_automaton
from src.common import ConfigurationError, UnknownBuiltinError
from src.embedding import FrontierMode
from src.learning import LearnConfig
from src.mdp import PLMDP, builtin_model, builtin_model_names, load_model_file, read_json
from src.mdp.io import schema_error
from src.product import EPMDPEnvironment
from src.reward import RewardConfig

logger = logging.getLogger(__name__)


class ExperimentMode(str, Enum):
    ELDGBA = "eldgba"
    LDBA_BASELINE = "ldba-baseline"
    FROZEN_FRONTIER = "frozen-frontier"


def frontier_for(mode: ExperimentMode, deferred_reset: bool = False) -> FrontierMode:
    if mode is ExperimentMode.FROZEN_FRONTIER:
        return FrontierMode.FROZEN
    if mode is ExperimentMode.ELDGBA and deferred_reset:
        return FrontierMode.DEFERRED
    return FrontierMode.IMMEDIATE


def _is_reference(value: str, builtins) -> bool:
    return value in builtins or Path(value).is_file()


class ExperimentConfig(BaseModel):
    """One learning experiment; model and automaton are built-in names or JSON paths"""
    model_config = ConfigDict(extra="forbid")

    model: str = "fig1"
    automaton: str = "phi_e"
    mode: ExperimentMode = ExperimentMode.ELDGBA
    deferred_reset: bool = False
    learn: LearnConfig = Field(default_factory=LearnConfig)
    repetitions: int = Field(default_factory=lambda: settings.repetitions, ge=1)
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    output_dir: str = Field(default_factory=lambda: settings.output_dir)
    oracle: bool = True
    enumeration_cap: int = Field(default_factory=lambda: settings.enumeration_cap, ge=1)

    @field_validator("model")
    @classmethod
    def _known_model(cls, value: str) -> str:
        if not _is_reference(value, builtin_model_names()):
            raise ValueError(f"'{value}' is neither a built-in model nor an existing file")
        return value

    @field_validator("automaton")
    @classmethod
    def _known_automaton(cls, value: str) -> str:
        if not _is_reference(value, builtin_automaton_names()):
            raise ValueError(f"'{value}' is neither a built-in automaton nor an existing file")
        return value

    @property
    def frontier_mode(self) -> FrontierMode:
        return frontier_for(self.mode, self.deferred_reset)


PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1": {"model": "fig1", "automaton": "phi_e", "learn": {"episodes": 1000, "tau": 100}},
    "phi_case1": {
        "model": "fig2",
        "automaton": "phi_case1",
        "learn": {
            "episodes": 20000,
            "tau": 100,
            "alpha_schedule": "polynomial",
            "stop_on_convergence": False,
        },
    },
    "phi_case2": {"model": "surveillance", "automaton": "phi_case2", "learn": {"episodes": 1000, "tau": 100}},
    "phi_case3": {"model": "surveillance", "automaton": "phi_case3", "learn": {"episodes": 2000, "tau": 100}},
    "scale15": {"model": "grid15", "automaton": "phi_case2", "learn": {"episodes": 3000, "tau": 200}},
    "scale25": {"model": "grid25", "automaton": "phi_case2", "learn": {"episodes": 5000, "tau": 300}},
    "scale40": {"model": "grid40", "automaton": "phi_case2", "learn": {"episodes": 8000, "tau": 500}},
}


def preset_names():
    return sorted(PRESETS)


def merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dict merge; values in override win"""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def build_config(
    preset: Optional[str] = None,
    config_file: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Assemble an ExperimentConfig: preset, then config file, then explicit overrides

    Raises:
        UnknownBuiltinError: unknown preset
        DocumentSchemaError: config file or merged values do not validate
    """
    raw: Dict[str, Any] = {}
    if preset is not None:
        if preset not in PRESETS:
            raise UnknownBuiltinError("preset", preset, PRESETS)
        raw = merge(raw, PRESETS[preset])
    if config_file is not None:
        raw = merge(raw, read_json(config_file))
    raw = merge(raw, overrides or {})
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise schema_error(exc) from exc


def resolve_model(reference: str) -> PLMDP:
    if reference in builtin_model_names():
        return builtin_model(reference)
    if not Path(reference).is_file():
        raise ConfigurationError(f"model '{reference}' is neither built in nor a file")
    return load_model_file(reference)


def resolve_automaton(reference: str) -> LDGBA:
    if reference in builtin_automaton_names():
        return builtin_automaton(reference)
    if not Path(reference).is_file():
        raise ConfigurationError(f"automaton '{reference}' is neither built in nor a file")
    return load_automaton(read_json(reference))


def build_environment(
    model_ref: str,
    automaton_ref: str,
    mode: ExperimentMode,
    deferred_reset: bool = False,
    reward_config: Optional[RewardConfig] = None,
) -> Tuple[EPMDPEnvironment, PLMDP, LDGBA]:
    """Environment for an experiment mode; ldba-baseline runs on the degeneralized automaton"""
    mode = ExperimentMode(mode)
    model = resolve_model(model_ref)
    automaton = resolve_automaton(automaton_ref)
    if mode is ExperimentMode.LDBA_BASELINE:
        automaton = degeneralize(automaton)
    frontier = frontier_for(mode, deferred_reset)
    return EPMDPEnvironment(model, automaton, frontier, reward_config), model, automaton
