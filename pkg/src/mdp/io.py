"""
PL-MDP documents - JSON schemas, loading and storing
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.common import DocumentSchemaError, ModelValidationError, letter_key
from src.mdp.grid import GridSpec, build_grid_env
from src.mdp.plmdp import PLMDP, validate_plmdp

logger = logging.getLogger(__name__)


class InitialDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")
    state: str
    label: List[str] = Field(default_factory=list)


class TransitionDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
    source: str = Field(alias="from")
    action: str
    to: str
    p: float


class LabelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")
    state: str
    label: List[str] = Field(default_factory=list)
    p: float


class PLMDPDocument(BaseModel):
    """Schema of an explicit PL-MDP document"""
    model_config = ConfigDict(extra="forbid")
    name: Optional[str] = None
    states: List[str]
    actions: Optional[List[str]] = None
    atomic_props: List[str]
    initial: InitialDocument
    transitions: List[TransitionDocument]
    labels: List[LabelDocument]


class CellDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")
    at: Tuple[int, int]
    label: List[str] = Field(default_factory=list)
    p: float


class GridDocument(BaseModel):
    """Schema of a slip gridworld document"""
    model_config = ConfigDict(extra="forbid")
    name: Optional[str] = None
    width: int = Field(ge=1)
    height: int = Field(ge=1)
    slip: float = Field(ge=0.0, lt=1.0)
    initial_cell: Tuple[int, int]
    atomic_props: List[str] = Field(default_factory=list)
    cells: List[CellDocument] = Field(default_factory=list)


def schema_error(exc: ValidationError) -> DocumentSchemaError:
    """Translate the first pydantic error into a DocumentSchemaError with its path"""
    first = exc.errors()[0]
    path = ".".join(str(part) for part in first.get("loc", ()))
    return DocumentSchemaError(first.get("msg", "invalid document"), path)


def _check_references(doc: PLMDPDocument) -> None:
    states = set(doc.states)
    actions = set(doc.actions) if doc.actions is not None else None
    props = set(doc.atomic_props)
    if doc.initial.state not in states:
        raise DocumentSchemaError(f"unknown state '{doc.initial.state}'", "initial.state")
    for i, tr in enumerate(doc.transitions):
        if tr.source not in states:
            raise DocumentSchemaError(f"unknown state '{tr.source}'", f"transitions.{i}.from")
        if tr.to not in states:
            raise DocumentSchemaError(f"unknown state '{tr.to}'", f"transitions.{i}.to")
        if actions is not None and tr.action not in actions:
            raise DocumentSchemaError(f"unknown action '{tr.action}'", f"transitions.{i}.action")
    for i, lab in enumerate(doc.labels):
        if lab.state not in states:
            raise DocumentSchemaError(f"unknown state '{lab.state}'", f"labels.{i}.state")
        unknown = set(lab.label) - props
        if unknown:
            raise DocumentSchemaError(
                f"unknown proposition(s) {sorted(unknown)}", f"labels.{i}.label"
            )


def load_plmdp(document: Dict[str, Any]) -> PLMDP:
    """
    Build a validated PL-MDP from its JSON document

    Args:
        document: Parsed JSON object following the PL-MDP schema

    Returns:
        PLMDP instance

    Raises:
        DocumentSchemaError: document does not follow the schema
        ModelValidationError: probabilities or action sets violate the invariants
    """
    try:
        doc = PLMDPDocument.model_validate(document)
    except ValidationError as exc:
        raise schema_error(exc) from exc
    _check_references(doc)

    actions: List[str] = list(doc.actions) if doc.actions is not None else []
    if doc.actions is None:
        for tr in doc.transitions:
            if tr.action not in actions:
                actions.append(tr.action)

    rows: Dict[Tuple[str, str], List[Tuple[str, float]]] = {}
    for tr in doc.transitions:
        rows.setdefault((tr.source, tr.action), []).append((tr.to, tr.p))
    label_rows: Dict[str, List] = {s: [] for s in doc.states}
    for lab in doc.labels:
        label_rows[lab.state].append((frozenset(lab.label), lab.p))

    model = PLMDP(
        states=tuple(doc.states),
        actions=tuple(actions),
        atomic_props=frozenset(doc.atomic_props),
        transitions={key: tuple(row) for key, row in rows.items()},
        labels={s: tuple(row) for s, row in label_rows.items()},
        initial_state=doc.initial.state,
        initial_label=frozenset(doc.initial.label),
        name=doc.name or "model",
    )
    report = validate_plmdp(model)
    if not report.ok:
        logger.error(f"Rejected PL-MDP document: {len(report.violations)} violation(s)")
        raise ModelValidationError(report)
    logger.info(f"Loaded PL-MDP '{model.name}' with {len(model.states)} states")
    return model


def store_plmdp(m: PLMDP) -> Dict[str, Any]:
    """Serialize a PL-MDP into its JSON document"""
    transitions = []
    for s in m.states:
        for a in m.available_actions(s):
            for target, p in m.transitions[(s, a)]:
                transitions.append({"from": s, "action": a, "to": target, "p": p})
    labels = []
    for s in m.states:
        for label, p in m.label_distribution(s):
            labels.append({"state": s, "label": list(letter_key(label)), "p": p})
    return {
        "name": m.name,
        "states": list(m.states),
        "actions": list(m.actions),
        "atomic_props": sorted(m.atomic_props),
        "initial": {"state": m.initial_state, "label": list(letter_key(m.initial_label))},
        "transitions": transitions,
        "labels": labels,
    }


def load_grid_spec(document: Dict[str, Any]) -> GridSpec:
    """Parse a grid document into a GridSpec"""
    try:
        doc = GridDocument.model_validate(document)
    except ValidationError as exc:
        raise schema_error(exc) from exc
    cell_labels: Dict[Tuple[int, int], List] = {}
    for cell in doc.cells:
        cell_labels.setdefault(tuple(cell.at), []).append((frozenset(cell.label), cell.p))
    return GridSpec(
        width=doc.width,
        height=doc.height,
        slip=doc.slip,
        initial_cell=tuple(doc.initial_cell),
        cell_labels=cell_labels,
        extra_props=tuple(doc.atomic_props),
        name=doc.name or "grid",
    )


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            return json.load(file)
    except json.JSONDecodeError as exc:
        raise DocumentSchemaError(f"not valid JSON ({exc.msg})", f"{path}:{exc.lineno}") from exc


def load_model_file(path: Union[str, Path]) -> PLMDP:
    """Load either an explicit PL-MDP document or a grid document"""
    document = read_json(path)
    if isinstance(document, dict) and "width" in document:
        return build_grid_env(load_grid_spec(document))
    return load_plmdp(document)
