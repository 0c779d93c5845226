"""
Built-in environments from the case studies

fig1          3-state deterministic-label model used to motivate the frontier
fig2          3x4 slip grid for the reach-and-stay task (layout reconstructed:
              start (0,0), targets (0,3) and (2,3), unsafe cells (2,0) and
              (2,2), which makes the best probability from (2,1) exactly 0.9)
surveillance  6x6 workspace with three bases, a supply station and obstacles
gridN         N x N scalability workspaces (N = 15, 25, 40)
"""
import logging
from typing import Callable, Dict

from src.common import ModelValidationError, UnknownBuiltinError
from src.mdp.grid import GridSpec, build_grid_env
from src.mdp.plmdp import PLMDP, validate_plmdp

logger = logging.getLogger(__name__)


def fig1_model() -> PLMDP:
    r0, r1, r2 = frozenset({"r0"}), frozenset({"r1"}), frozenset({"r2"})
    transitions = {
        ("s0", "a01"): (("s1", 1.0),),
        ("s0", "a02"): (("s2", 1.0),),
        ("s1", "a10"): (("s0", 1.0),),
        ("s1", "a11"): (("s1", 1.0),),
        ("s2", "a20"): (("s0", 1.0),),
        ("s2", "a22"): (("s2", 1.0),),
    }
    model = PLMDP(
        states=("s0", "s1", "s2"),
        actions=("a01", "a02", "a10", "a11", "a20", "a22"),
        atomic_props=frozenset({"r0", "r1", "r2"}),
        transitions=transitions,
        labels={"s0": ((r0, 1.0),), "s1": ((r1, 1.0),), "s2": ((r2, 1.0),)},
        initial_state="s0",
        initial_label=r0,
        name="fig1",
    )
    report = validate_plmdp(model)
    if not report.ok:
        raise ModelValidationError(report)
    return model


def fig2_spec() -> GridSpec:
    t, u = frozenset({"t"}), frozenset({"u"})
    return GridSpec(
        width=4,
        height=3,
        slip=0.1,
        initial_cell=(0, 0),
        cell_labels={
            (0, 3): [(t, 1.0)],
            (2, 3): [(t, 1.0)],
            (2, 0): [(u, 1.0)],
            (2, 2): [(u, 1.0)],
        },
        name="fig2",
    )


def surveillance_spec() -> GridSpec:
    base1, base2, base3 = frozenset({"Base1"}), frozenset({"Base2"}), frozenset({"Base3"})
    obs, sply, empty = frozenset({"Obs"}), frozenset({"Sply"}), frozenset()
    return GridSpec(
        width=6,
        height=6,
        slip=0.1,
        initial_cell=(0, 0),
        cell_labels={
            (0, 5): [(base1, 1.0)],
            (5, 5): [(base2, 1.0)],
            (5, 0): [(base3, 1.0)],
            (0, 2): [(sply, 1.0)],
            (2, 2): [(obs, 1.0)],
            (2, 3): [(obs, 1.0)],
            (3, 2): [(obs, 1.0)],
            (3, 3): [(obs, 0.1), (empty, 0.9)],
        },
        name="surveillance",
    )


def scalability_spec(size: int) -> GridSpec:
    """Bases in three corners, pillar obstacles off the border corridors"""
    cells = {
        (0, size - 1): [(frozenset({"Base1"}), 1.0)],
        (size - 1, size - 1): [(frozenset({"Base2"}), 1.0)],
        (size - 1, 0): [(frozenset({"Base3"}), 1.0)],
    }
    for row in range(2, size - 2):
        for col in range(2, size - 2):
            if row % 4 == 2 and col % 4 == 2:
                cells[(row, col)] = [(frozenset({"Obs"}), 1.0)]
    return GridSpec(
        width=size,
        height=size,
        slip=0.1,
        initial_cell=(0, 0),
        cell_labels=cells,
        name=f"grid{size}",
    )


_BUILTINS: Dict[str, Callable[[], PLMDP]] = {
    "fig1": fig1_model,
    "fig2": lambda: build_grid_env(fig2_spec()),
    "surveillance": lambda: build_grid_env(surveillance_spec()),
    "grid15": lambda: build_grid_env(scalability_spec(15)),
    "grid25": lambda: build_grid_env(scalability_spec(25)),
    "grid40": lambda: build_grid_env(scalability_spec(40)),
}


def builtin_model_names():
    return sorted(_BUILTINS)


def builtin_model(name: str) -> PLMDP:
    if name not in _BUILTINS:
        raise UnknownBuiltinError("model", name, _BUILTINS)
    logger.debug(f"Building built-in model '{name}'")
    return _BUILTINS[name]()
