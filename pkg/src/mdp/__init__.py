"""Probabilistic labeled MDPs"""
from src.mdp.plmdp import PLMDP, sample_step, validate_plmdp
from src.mdp.grid import GRID_ACTIONS, GridSpec, build_grid_env, cell_name, parse_cell_name
from src.mdp.io import load_grid_spec, load_model_file, load_plmdp, read_json, store_plmdp
from src.mdp.builtins import builtin_model, builtin_model_names, fig2_spec, scalability_spec, surveillance_spec

__all__ = [
    "PLMDP",
    "sample_step",
    "validate_plmdp",
    "GRID_ACTIONS",
    "GridSpec",
    "build_grid_env",
    "cell_name",
    "parse_cell_name",
    "load_grid_spec",
    "load_model_file",
    "load_plmdp",
    "read_json",
    "store_plmdp",
    "builtin_model",
    "builtin_model_names",
    "fig2_spec",
    "scalability_spec",
    "surveillance_spec",
]
