"""
Automaton documents - JSON schema carrying the Q_D / Q_N partition and ε-edges
"""
import logging
from typing import Any, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.automata.ldgba import LDGBA, validate_ldgba
from src.common import AutomatonValidationError, DocumentSchemaError, Letter, all_letters, letter_key
from src.mdp.io import schema_error

logger = logging.getLogger(__name__)


class EdgeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
    source: str = Field(alias="from")
    letters: Union[Literal["any"], List[List[str]]]
    to: str


class EpsilonDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
    source: str = Field(alias="from")
    to: str


class AutomatonDocument(BaseModel):
    """Schema of an LDGBA document"""
    model_config = ConfigDict(extra="forbid")
    name: str = "automaton"
    props: List[str]
    states: List[str]
    initial: str
    q_d: List[str]
    q_n: List[str] = Field(default_factory=list)
    transitions: List[EdgeDocument]
    epsilon: List[EpsilonDocument] = Field(default_factory=list)
    accepting: List[List[str]]


def load_automaton(document: Dict[str, Any]) -> LDGBA:
    """
    Build a validated LDGBA from its JSON document

    Args:
        document: Parsed JSON object following the automaton schema

    Returns:
        LDGBA with "any" edges expanded over 2^props

    Raises:
        DocumentSchemaError: document does not follow the schema
        AutomatonValidationError: automaton is not limit-deterministic
    """
    try:
        doc = AutomatonDocument.model_validate(document)
    except ValidationError as exc:
        raise schema_error(exc) from exc

    props = frozenset(doc.props)
    every_letter = all_letters(props)
    transitions: Dict[Tuple[str, Letter], List[str]] = {}
    for i, edge in enumerate(doc.transitions):
        if edge.letters == "any":
            letters = every_letter
        else:
            letters = []
            for k, raw in enumerate(edge.letters):
                unknown = set(raw) - props
                if unknown:
                    raise DocumentSchemaError(
                        f"unknown proposition(s) {sorted(unknown)}", f"transitions.{i}.letters.{k}"
                    )
                letters.append(frozenset(raw))
        for letter in letters:
            targets = transitions.setdefault((edge.source, letter), [])
            if edge.to not in targets:
                targets.append(edge.to)

    epsilon: Dict[str, List[str]] = {}
    for edge in doc.epsilon:
        targets = epsilon.setdefault(edge.source, [])
        if edge.to not in targets:
            targets.append(edge.to)

    automaton = LDGBA(
        props=props,
        states=tuple(doc.states),
        initial=doc.initial,
        q_d=frozenset(doc.q_d),
        q_n=frozenset(doc.q_n),
        transitions={key: tuple(targets) for key, targets in transitions.items()},
        epsilon={q: tuple(targets) for q, targets in epsilon.items()},
        accepting=tuple(frozenset(f_set) for f_set in doc.accepting),
        name=doc.name,
    )
    report = validate_ldgba(automaton)
    if not report.ok:
        logger.error(f"Refused automaton '{doc.name}': {len(report.violations)} violation(s)")
        raise AutomatonValidationError(report)
    logger.info(
        f"Loaded automaton '{automaton.name}' with {len(automaton.states)} states "
        f"and {automaton.num_sets} accepting set(s)"
    )
    return automaton


def store_automaton(a: LDGBA) -> Dict[str, Any]:
    """Serialize an LDGBA; edges covering the whole alphabet are written as "any" """
    every_letter = a.letters
    transitions = []
    for q in a.states:
        grouped: Dict[str, List[Letter]] = {}
        for letter in every_letter:
            for target in a.successors(q, letter):
                grouped.setdefault(target, []).append(letter)
        for target in sorted(grouped, key=a.states.index):
            letters = grouped[target]
            if len(letters) == len(every_letter):
                transitions.append({"from": q, "letters": "any", "to": target})
            else:
                transitions.append(
                    {"from": q, "letters": [list(letter_key(l)) for l in letters], "to": target}
                )
    epsilon = [
        {"from": q, "to": target} for q in a.states for target in a.epsilon_successors(q)
    ]
    return {
        "name": a.name,
        "props": sorted(a.props),
        "states": list(a.states),
        "initial": a.initial,
        "q_d": [q for q in a.states if q in a.q_d],
        "q_n": [q for q in a.states if q in a.q_n],
        "transitions": transitions,
        "epsilon": epsilon,
        "accepting": [[q for q in a.states if q in f_set] for f_set in a.accepting],
    }
