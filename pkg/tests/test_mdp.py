"""Tests for PL-MDPs, grid construction and model documents"""
import json
from collections import Counter
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chisquare

from src.common import DocumentSchemaError, ModelValidationError, UnavailableActionError, UnknownBuiltinError
from src.mdp import (
    GridSpec,
    build_grid_env,
    builtin_model,
    builtin_model_names,
    cell_name,
    load_model_file,
    load_plmdp,
    parse_cell_name,
    sample_step,
    store_plmdp,
    validate_plmdp,
)


DATA = Path(__file__).resolve().parent.parent / "data"


def make_fig1():
    return builtin_model("fig1")


def two_label_model():
    """One state, one action, label {a} with 0.3 and {} with 0.7"""
    return load_plmdp(
        {
            "name": "coin",
            "states": ["s"],
            "atomic_props": ["a"],
            "initial": {"state": "s", "label": []},
            "transitions": [{"from": "s", "action": "stay", "to": "s", "p": 1.0}],
            "labels": [
                {"state": "s", "label": ["a"], "p": 0.3},
                {"state": "s", "label": [], "p": 0.7},
            ],
        }
    )


def test_fig1_is_valid():
    """The motivating model passes validation"""
    model = make_fig1()

    assert validate_plmdp(model).ok
    assert model.available_actions("s0") == ("a01", "a02")
    assert model.initial_label == frozenset({"r0"})


def test_sample_step_deterministic_model():
    """Deterministic rows always give the same successor and label"""
    model = make_fig1()
    rng = np.random.default_rng(0)

    assert sample_step(model, "s0", "a01", rng) == ("s1", frozenset({"r1"}))
    assert sample_step(model, "s1", "a10", rng) == ("s0", frozenset({"r0"}))


def test_sample_step_unavailable_action():
    """Asking for an action outside A(s) raises"""
    model = make_fig1()

    with pytest.raises(UnavailableActionError):
        sample_step(model, "s0", "a11", np.random.default_rng(0))


def test_label_frequencies_match_distribution():
    """Sampled labels follow p_L (chi-square at 0.001)"""
    model = two_label_model()
    rng = np.random.default_rng(42)
    draws = Counter(sample_step(model, "s", "stay", rng)[1] for _ in range(20000))

    observed = [draws[frozenset({"a"})], draws[frozenset()]]
    _, p_value = chisquare(observed, f_exp=[6000, 14000])
    assert p_value > 0.001


def test_slip_frequencies_match_grid_row():
    """Moves in the slip grid deviate laterally with slip / 2 each"""
    spec = GridSpec(width=3, height=3, slip=0.1, initial_cell=(1, 1))
    model = build_grid_env(spec)
    rng = np.random.default_rng(7)
    draws = Counter(sample_step(model, "(1,1)", "N", rng)[0] for _ in range(20000))

    observed = [draws["(0,1)"], draws["(1,2)"], draws["(1,0)"]]
    _, p_value = chisquare(observed, f_exp=[18000, 1000, 1000])
    assert p_value > 0.001


def test_validation_reports_bad_row():
    """A row summing to 0.9 is reported as transition-stochastic"""
    model = make_fig1()
    transitions = dict(model.transitions)
    transitions[("s0", "a01")] = (("s1", 0.9),)
    broken = replace(model, transitions=transitions)

    report = validate_plmdp(broken)

    assert not report.ok
    assert "transition-stochastic" in report.rules()


def test_validation_reports_initial_label():
    """The initial label must have positive probability"""
    broken = replace(make_fig1(), initial_label=frozenset({"r1"}))

    assert "initial-label" in validate_plmdp(broken).rules()


def test_load_rejects_unknown_state():
    """References to undeclared states are schema errors with a path"""
    document = store_plmdp(make_fig1())
    document["transitions"][0]["to"] = "s9"

    with pytest.raises(DocumentSchemaError) as info:
        load_plmdp(document)
    assert "transitions.0.to" in str(info.value)


def test_load_rejects_unknown_action():
    """A transition naming an undeclared action is a schema error on that field"""
    document = store_plmdp(make_fig1())
    document["transitions"][0]["action"] = "fly"

    with pytest.raises(DocumentSchemaError) as info:
        load_plmdp(document)
    assert "transitions.0.action" in str(info.value)


def test_load_rejects_missing_field():

    """Missing required fields surface as DocumentSchemaError"""
    document = store_plmdp(make_fig1())
    del document["labels"]

    with pytest.raises(DocumentSchemaError):
        load_plmdp(document)


def test_load_rejects_bad_probabilities():
    """Probabilities that do not sum to one fail validation"""
    document = store_plmdp(make_fig1())
    document["labels"][0]["p"] = 0.5

    with pytest.raises(ModelValidationError) as info:
        load_plmdp(document)
    assert "label-stochastic" in info.value.report.rules()


def test_store_and_load_preserve_model():
    """A stored model loads back equal"""
    model = make_fig1()

    assert load_plmdp(json.loads(json.dumps(store_plmdp(model)))) == model


def test_shipped_documents_load():
    """The documents under data/ describe the built-in models"""
    assert load_model_file(DATA / "models" / "fig1.json") == make_fig1()
    assert load_model_file(DATA / "models" / "fig2_grid.json") == builtin_model("fig2")


def test_grid_shape_and_boundaries():
    """Corner moves into a wall keep the robot in place"""
    model = builtin_model("fig2")

    assert len(model.states) == 12
    row = dict(model.successors("(0,0)", "N"))
    assert row["(0,0)"] == pytest.approx(0.95)
    assert row["(0,1)"] == pytest.approx(0.05)
    assert model.successors("(1,1)", "R") == (("(1,1)", 1.0),)


def test_cell_names_parse_back():
    """cell_name and parse_cell_name are inverse"""
    assert parse_cell_name(cell_name(4, 11)) == (4, 11)


@pytest.mark.parametrize("name,states", [("surveillance", 36), ("grid15", 225)])
def test_builtin_grid_sizes(name, states):
    """Built-in workspaces have the documented number of cells"""
    model = builtin_model(name)

    assert len(model.states) == states
    assert validate_plmdp(model).ok


def test_unknown_builtin_model():
    """Unregistered names raise UnknownBuiltinError"""
    with pytest.raises(UnknownBuiltinError):
        builtin_model("nowhere")
    assert "fig1" in builtin_model_names()


if __name__ == "__main__":
    pytest.main([__file__])
