"""
Experiment runner - repeated learning, aggregation, oracle cross-check and artifacts
"""
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.automata import store_automaton
from src.cli.config import ExperimentConfig, ExperimentMode, build_environment, resolve_automaton, resolve_model
from src.common import PolicyGapError, StateBudgetExceededError, UnavailableActionError, UnknownBuiltinError
from src.learning import Policy, TrainingResult, train_environment
from src.mdp import PLMDP, parse_cell_name, store_plmdp
from src.oracle import (
    MECKind,
    brute_force_deterministic_policies,
    build_oracle_report,
    complete_policy,
    max_reach_probability,
    mec_decomposition,
    optimal_reach_policy,
)
from src.product import HALT, EPMDPEnvironment, ExplicitProduct, ProductState, enumerate_environment
from src.reward import RewardConfig

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def _rounded(value: float) -> float:
    return round(float(value), 12)


def _format_set(items: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(items)) + "}"


@dataclass
class RepetitionOutcome:
    index: int
    seed: int
    curve: pd.DataFrame
    converged: bool
    training: Optional[TrainingResult] = None


@dataclass
class OracleOutcome:
    product: ExplicitProduct
    probabilities: np.ndarray
    report: Dict[str, Any]


@dataclass
class ExperimentResult:
    """Everything one experiment produces; write_artifacts turns it into files"""
    config: ExperimentConfig
    curves: pd.DataFrame
    aggregate: pd.DataFrame
    training: TrainingResult
    summary: Dict[str, Any]
    oracle: Optional[OracleOutcome] = None
    heatmap: Optional[pd.DataFrame] = None
    repetitions: List[RepetitionOutcome] = field(default_factory=list)


def repetition_seeds(seed: int, count: int) -> List[int]:
    """Independent child seeds, one per repetition"""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def _run_repetition(job: Tuple[ExperimentConfig, int, int]) -> RepetitionOutcome:
    cfg, index, seed = job
    env, _, _ = build_environment(cfg.model, cfg.automaton, cfg.mode, cfg.deferred_reset, cfg.learn.reward)
    learn = cfg.learn.model_copy(update={"seed": seed})
    result = train_environment(env, learn)
    curve = pd.DataFrame(
        {
            "repetition": index,
            "episode": [s.episode for s in result.curve],
            "cumulative_reward": [s.cumulative_reward for s in result.curve],
            "steps": [s.steps for s in result.curve],
            "value_at_x0": [s.value_at_x0 for s in result.curve],
        }
    )
    # only the first repetition's table is shipped back to the parent
    return RepetitionOutcome(index, seed, curve, result.converged, result if index == 0 else None)


def run_repetitions(cfg: ExperimentConfig) -> List[RepetitionOutcome]:
    """Train cfg.repetitions times with child seeds; order of results follows the repetition index"""
    seeds = repetition_seeds(cfg.learn.seed, cfg.repetitions)
    jobs = [(cfg, i, seed) for i, seed in enumerate(seeds)]
    if cfg.workers > 1 and cfg.repetitions > 1:
        logger.info(f"Running {cfg.repetitions} repetitions on {cfg.workers} workers")
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_run_repetition, jobs))
    return [_run_repetition(job) for job in jobs]


def aggregate_curves(curves: pd.DataFrame) -> pd.DataFrame:
    """
    Mean and standard deviation per episode across repetitions

    Standard deviations use the population convention (ddof=0), which the
    column names carry.
    """
    grouped = curves.groupby("episode", sort=True)
    aggregate = pd.DataFrame(
        {
            "repetitions": grouped["cumulative_reward"].count(),
            "mean_reward": grouped["cumulative_reward"].mean(),
            "std_reward_ddof0": grouped["cumulative_reward"].std(ddof=0),
            "mean_value_at_x0": grouped["value_at_x0"].mean(),
            "std_value_at_x0_ddof0": grouped["value_at_x0"].std(ddof=0),
        }
    )
    return aggregate.reset_index()


def grid_cells(model: PLMDP) -> Optional[List[Tuple[int, int, str]]]:
    """(row, col, state) for every state of a gridworld, None for other models"""
    cells = []
    for s in model.states:
        try:
            row, col = parse_cell_name(s)
        except ValueError:
            return None
        cells.append((row, col, s))
    return sorted(cells)


def run_oracle(
    env: EPMDPEnvironment,
    cap: int,
    extra_starts: Sequence[ProductState] = (),
    policies: Optional[Mapping[str, Policy]] = None,
    brute_force: bool = False,
) -> Optional[OracleOutcome]:
    """
    Enumerate the product and build the oracle report

    Returns None (after a warning) when the product is larger than cap.
    Learned policies are completed on states they never saw before they
    are evaluated.
    """
    try:
        p = enumerate_environment(env, cap, extra_starts)
    except StateBudgetExceededError as exc:
        logger.warning(f"Oracle skipped: {exc}")
        return None
    mecs = mec_decomposition(p)
    target = frozenset().union(*(m.states for m in mecs if m.kind is MECKind.AMEC))
    probabilities = max_reach_probability(p, target)
    evaluated = {name: complete_policy(p, pol) for name, pol in (policies or {}).items()}
    evaluated["optimal"] = optimal_reach_policy(p, target, probabilities, mecs)
    report = build_oracle_report(p, evaluated, mecs, probabilities)
    if brute_force:
        try:
            found = brute_force_deterministic_policies(p)
        except StateBudgetExceededError as exc:
            logger.info(f"Brute-force policy search skipped: {exc}")
        else:
            report["brute_force"] = {
                "policies_checked": found.policies_checked,
                "satisfying": found.satisfying,
                "best_probability": _rounded(found.best_probability),
            }
    return OracleOutcome(p, probabilities, report)


def build_heatmap(
    env: EPMDPEnvironment,
    cells: Sequence[Tuple[int, int, str]],
    training: Optional[TrainingResult] = None,
    oracle: Optional[OracleOutcome] = None,
) -> pd.DataFrame:
    """Per-cell learned value and oracle probability of the start state (s, l, q0, full frontier)"""
    rows = []
    for row, col, s in cells:
        x = env.start_state(s)
        entry: Dict[str, Any] = {"row": row, "col": col, "state": s}
        if training is not None:
            entry["visited"] = x in training.table.actions
            entry["learned_value"] = training.table.value(x)
        if oracle is not None:
            index = oracle.product.index.get(x)
            entry["oracle_probability"] = float(oracle.probabilities[index]) if index is not None else np.nan
        rows.append(entry)
    return pd.DataFrame(rows)


def _final_mean(aggregate: pd.DataFrame) -> float:
    return float(aggregate["mean_reward"].iloc[-1]) if len(aggregate) else 0.0


def first_episode_reaching(aggregate: pd.DataFrame, fraction: float = 0.5) -> Optional[int]:
    """First episode whose mean reward reaches fraction of the final mean reward"""
    final = _final_mean(aggregate)
    if final <= 0.0:
        return None
    hits = aggregate.loc[aggregate["mean_reward"] >= fraction * final, "episode"]
    return int(hits.iloc[0]) if len(hits) else None


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """
    Learn, aggregate and cross-check one configuration

    Args:
        cfg: Experiment configuration

    Returns:
        Curves of every repetition, the aggregate curve, the first
        repetition's policy and values, and the oracle report when the
        product fits under the enumeration cap
    """
    logger.info(
        f"Experiment {cfg.model} x {cfg.automaton} ({cfg.mode.value}): "
        f"{cfg.repetitions} repetition(s) of {cfg.learn.episodes} episodes, tau={cfg.learn.tau}"
    )
    outcomes = run_repetitions(cfg)
    curves = pd.concat([o.curve for o in outcomes], ignore_index=True)
    aggregate = aggregate_curves(curves)
    training = outcomes[0].training

    env, model, _ = build_environment(cfg.model, cfg.automaton, cfg.mode, cfg.deferred_reset, cfg.learn.reward)
    cells = grid_cells(model)
    extra_starts = [env.start_state(s) for _, _, s in cells] if cells else []

    oracle = None
    if cfg.oracle:
        oracle = run_oracle(env, cfg.enumeration_cap, extra_starts, {"learned": training.policy})
    heatmap = build_heatmap(env, cells, training, oracle) if cells else None

    summary: Dict[str, Any] = {
        "model": cfg.model,
        "automaton": cfg.automaton,
        "mode": cfg.mode.value,
        "deferred_reset": cfg.deferred_reset,
        "repetitions": cfg.repetitions,
        "seeds": [o.seed for o in outcomes],
        "episodes_run": [int(o.curve["episode"].max()) if len(o.curve) else 0 for o in outcomes],
        "converged": [o.converged for o in outcomes],
        "final_mean_reward": _rounded(_final_mean(aggregate)),
        "first_episode_half_final_reward": first_episode_reaching(aggregate),
        "learned_states": len(training.table.actions),
        "value_at_x0": _rounded(training.value_at_x0),
        "oracle": None,
    }
    if oracle is not None:
        initial = oracle.report["initial_max_probability"]
        summary["oracle"] = {
            "product_states": oracle.product.num_states,
            "initial_max_probability": initial,
            "learned_policy_probability": oracle.report["policies"]["learned"]["satisfaction_probability"],
            "value_gap_at_x0": _rounded(abs(training.value_at_x0 - initial)),
        }
    logger.info(
        f"Experiment finished: final mean reward {summary['final_mean_reward']:.4f}, "
        f"value at x0 {summary['value_at_x0']:.4f}"
    )
    return ExperimentResult(cfg, curves, aggregate, training, summary, oracle, heatmap, outcomes)


def policy_document(cfg: ExperimentConfig, policy: Policy) -> Dict[str, Any]:
    """Self-describing policy artifact; simulate_policy rebuilds the environment from it"""
    return {
        "model": cfg.model,
        "automaton": cfg.automaton,
        "mode": cfg.mode.value,
        "deferred_reset": cfg.deferred_reset,
        "reward": cfg.learn.reward.model_dump(),
        "policy": policy.to_document(),
    }


def write_json(path: Path, document: Any) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write("\n")


def write_csv(path: Path, frame: pd.DataFrame) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def write_artifacts(result: ExperimentResult, out_dir: Optional[str] = None) -> Path:
    """
    Write the artifact bundle of an experiment

    Files: curves.csv, aggregate.csv, policy.json, values.json,
    summary.json, plus heatmap.csv for gridworlds and oracle_report.json
    when the oracle ran. Nothing time-dependent is written.
    """
    out = Path(out_dir or result.config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "curves.csv", result.curves)
    write_csv(out / "aggregate.csv", result.aggregate)
    write_json(out / "policy.json", policy_document(result.config, result.training.policy))
    write_json(out / "values.json", {x.encode(): _rounded(v) for x, v in result.training.values.items()})
    write_json(out / "summary.json", result.summary)
    if result.heatmap is not None:
        write_csv(out / "heatmap.csv", result.heatmap)
    if result.oracle is not None:
        write_json(out / "oracle_report.json", result.oracle.report)
    logger.info(f"Artifacts written to {out}")
    return out


def simulate_policy(document: Mapping[str, Any], steps: int, seed: int = 0) -> pd.DataFrame:
    """
    Roll out a stored policy in its own environment

    Args:
        document: Policy artifact as written by write_artifacts
        steps: Number of actions to take; 0 gives the initial state only
        seed: Seed of the sampling stream

    Returns:
        One row per visited state with its label, automaton state,
        frontier, credited accepting sets and the action taken there

    Raises:
        PolicyGapError: the policy has no action for a reached state
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    mode = ExperimentMode(document["mode"])
    reward_config = RewardConfig(**document["reward"]) if "reward" in document else None
    env, _, _ = build_environment(
        document["model"], document["automaton"], mode, document.get("deferred_reset", False), reward_config
    )
    choices: Mapping[str, str] = document["policy"]
    rng = np.random.default_rng(seed)
    x = env.initial_state()
    rows = []
    for t in range(steps + 1):
        row = {
            "t": t,
            "s": x.s,
            "label": ",".join(sorted(x.l)),
            "q": x.q,
            "frontier": str(x.frontier),
            "flags": _format_set(x.flags),
            "action": "",
            "reward": 0.0,
        }
        rows.append(row)
        if t == steps:
            break
        u = HALT if x.is_sink else _lookup(env, x, choices)
        result = env.product_step(x, u, rng)
        row["action"] = str(u)
        row["reward"] = result.reward
        x = result.state
    return pd.DataFrame(rows)


def _lookup(env: EPMDPEnvironment, x: ProductState, choices: Mapping[str, str]):
    name = choices.get(x.encode())
    if name is None:
        raise PolicyGapError(x)
    for u in env.available_actions(x):
        if str(u) == name:
            return u
    raise UnavailableActionError(str(x), name)


def compare(cfg: ExperimentConfig, modes: Sequence[ExperimentMode]) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """
    Same task and seeds under several embedding modes

    Every repetition runs the full episode budget so the aggregate curves
    line up episode by episode.

    Returns:
        Aggregate curves with a mode column, and a per-mode summary with
        the final mean reward and the first episode reaching half of it
    """
    frames = []
    summary: Dict[str, Any] = {}
    learn = cfg.learn.model_copy(update={"stop_on_convergence": False})
    for mode in modes:
        mode = ExperimentMode(mode)
        run_cfg = cfg.model_copy(update={"mode": mode, "learn": learn})
        logger.info(f"Comparing mode {mode.value}")
        outcomes = run_repetitions(run_cfg)
        aggregate = aggregate_curves(pd.concat([o.curve for o in outcomes], ignore_index=True))
        frames.append(aggregate.assign(mode=mode.value))
        summary[mode.value] = {
            "final_mean_reward": _rounded(_final_mean(aggregate)),
            "first_episode_half_final_reward": first_episode_reaching(aggregate),
        }
    table = pd.concat(frames, ignore_index=True)
    table = table[["mode"] + [c for c in table.columns if c != "mode"]]
    return table, summary


def write_comparison(table: pd.DataFrame, summary: Dict[str, Any], out_dir: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "compare.csv", table)
    write_json(out / "compare_summary.json", summary)
    logger.info(f"Comparison written to {out}")
    return out


EXPORT_KINDS = ("model", "automaton", "product")


def export_document(
    kind: str,
    model_ref: str,
    automaton_ref: Optional[str] = None,
    mode: ExperimentMode = ExperimentMode.ELDGBA,
    deferred_reset: bool = False,
    cap: Optional[int] = None,
) -> Dict[str, Any]:
    """
    JSON document of a model, an automaton or the enumerated product

    For kind "automaton" the reference is taken from automaton_ref.
    """
    if kind == "model":
        return store_plmdp(resolve_model(model_ref))
    if kind == "automaton":
        return store_automaton(resolve_automaton(automaton_ref))
    if kind == "product":
        env, _, _ = build_environment(model_ref, automaton_ref, mode, deferred_reset)
        return enumerate_environment(env, cap).to_document()
    raise UnknownBuiltinError("export kind", kind, EXPORT_KINDS)
