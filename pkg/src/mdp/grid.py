"""
Slip gridworld builder

Cells are addressed (row, col) with row 0 on the north edge. Moves N/S/E/W
succeed with probability 1 - slip and deviate to each lateral neighbor with
probability slip / 2. Mass that would leave the grid stays in place. R keeps
the robot where it is.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.common import ConfigurationError, EMPTY_LETTER, Letter, ModelValidationError, ValidationReport
from src.mdp.plmdp import PLMDP, validate_plmdp

logger = logging.getLogger(__name__)

GRID_ACTIONS: Tuple[str, ...] = ("N", "S", "E", "W", "R")

Cell = Tuple[int, int]

_MOVES: Dict[str, Cell] = {"N": (-1, 0), "S": (1, 0), "E": (0, 1), "W": (0, -1)}
_LATERAL: Dict[str, Tuple[str, str]] = {
    "N": ("E", "W"),
    "S": ("E", "W"),
    "E": ("N", "S"),
    "W": ("N", "S"),
}


def cell_name(row: int, col: int) -> str:
    return f"({row},{col})"


def parse_cell_name(name: str) -> Cell:
    row, col = name.strip("()").split(",")
    return int(row), int(col)


@dataclass
class GridSpec:
    """Layout of a slip gridworld"""
    width: int
    height: int
    slip: float = 0.1
    initial_cell: Cell = (0, 0)
    cell_labels: Dict[Cell, List[Tuple[Letter, float]]] = field(default_factory=dict)
    initial_label: Optional[Letter] = None
    extra_props: Tuple[str, ...] = ()
    name: str = "grid"

    def in_bounds(self, cell: Cell) -> bool:
        row, col = cell
        return 0 <= row < self.height and 0 <= col < self.width

    def labels_at(self, cell: Cell) -> List[Tuple[Letter, float]]:
        return self.cell_labels.get(cell, [(EMPTY_LETTER, 1.0)])


def _move(spec: GridSpec, cell: Cell, direction: str) -> Cell:
    dr, dc = _MOVES[direction]
    target = (cell[0] + dr, cell[1] + dc)
    return target if spec.in_bounds(target) else cell


def _row_for(spec: GridSpec, cell: Cell, action: str) -> Tuple[Tuple[str, float], ...]:
    if action == "R":
        return ((cell_name(*cell), 1.0),)
    mass: "OrderedDict[Cell, float]" = OrderedDict()
    outcomes = [(action, 1.0 - spec.slip)]
    if spec.slip > 0.0:
        left, right = _LATERAL[action]
        outcomes.extend([(left, spec.slip / 2.0), (right, spec.slip / 2.0)])
    for direction, p in outcomes:
        target = _move(spec, cell, direction)
        mass[target] = mass.get(target, 0.0) + p
    return tuple((cell_name(*target), p) for target, p in mass.items())


def build_grid_env(spec: GridSpec) -> PLMDP:
    """
    Build the PL-MDP of a slip gridworld

    Args:
        spec: Grid layout

    Returns:
        Validated PL-MDP with width * height states and actions N, S, E, W, R
    """
    if not spec.in_bounds(spec.initial_cell):
        raise ConfigurationError(
            f"initial cell {spec.initial_cell} is outside the {spec.height}x{spec.width} grid"
        )
    if not 0.0 <= spec.slip < 1.0:
        raise ConfigurationError(f"slip must lie in [0, 1), got {spec.slip}")
    report = ValidationReport(subject=f"grid '{spec.name}'")
    for cell in spec.cell_labels:
        if not spec.in_bounds(cell):
            report.add("cell-out-of-bounds", f"cell {cell}")
    if not report.ok:
        raise ModelValidationError(report)

    cells = [(r, c) for r in range(spec.height) for c in range(spec.width)]
    states = tuple(cell_name(*cell) for cell in cells)
    transitions = {}
    labels = {}
    props = set(spec.extra_props)
    for cell in cells:
        name = cell_name(*cell)
        for action in GRID_ACTIONS:
            transitions[(name, action)] = _row_for(spec, cell, action)
        row = tuple((frozenset(letter), float(p)) for letter, p in spec.labels_at(cell))
        labels[name] = row
        for letter, _ in row:
            props.update(letter)

    initial_label = spec.initial_label
    if initial_label is None:
        # most probable label, first listed on ties
        initial_label = max(labels[cell_name(*spec.initial_cell)], key=lambda item: item[1])[0]

    model = PLMDP(
        states=states,
        actions=GRID_ACTIONS,
        atomic_props=frozenset(props),
        transitions=transitions,
        labels=labels,
        initial_state=cell_name(*spec.initial_cell),
        initial_label=frozenset(initial_label),
        name=spec.name,
    )
    report = validate_plmdp(model)
    if not report.ok:
        raise ModelValidationError(report)
    logger.info(f"Built grid '{spec.name}' with {len(states)} states (slip={spec.slip})")
    return model
