"""
Command line entry point

    python -m src.cli learn --preset fig1 --out results/fig1
    python -m src.cli oracle --model fig2 --automaton phi_case1 --out results/fig2
    python -m src.cli simulate --policy results/fig1/policy.json --steps 25
    python -m src.cli compare --preset phi_case2 --reps 20 --episodes 1000
    python -m src.cli export automaton --automaton phi_e
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config.logging_config import configure_logging
from src.cli.config import ExperimentMode, build_config, build_environment, preset_names
from src.cli.experiment import (
    EXPORT_KINDS,
    build_heatmap,
    compare,
    export_document,
    grid_cells,
    run_experiment,
    run_oracle,
    simulate_policy,
    write_artifacts,
    write_comparison,
    write_csv,
    write_json,
)
from src.common import (
    AutomatonValidationError,
    ConfigurationError,
    DocumentSchemaError,
    ModelValidationError,
    SynthesisError,
    UnknownBuiltinError,
)
from src.learning import AlphaSchedule
from src.mdp import read_json

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_INVALID = 2

INVALID_INPUT = (
    ConfigurationError,
    DocumentSchemaError,
    ModelValidationError,
    AutomatonValidationError,
    UnknownBuiltinError,
)

MODES = [m.value for m in ExperimentMode]


def _add_task_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=preset_names(), help="Named experiment preset")
    parser.add_argument("--config", help="JSON experiment config; flags override its values")
    parser.add_argument("--model", help="Built-in model name or PL-MDP / grid JSON file")
    parser.add_argument("--automaton", help="Built-in automaton name or automaton JSON file")
    parser.add_argument("--mode", choices=MODES, help="Embedding mode")
    parser.add_argument("--deferred-reset", action="store_true", default=None, help="Reset the frontier lazily")
    parser.add_argument("--cap", type=int, help="Product enumeration cap for the oracle")
    parser.add_argument("--out", help="Output directory")


def _add_learning_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--episodes", type=int)
    parser.add_argument("--tau", type=int, help="Steps per episode")
    parser.add_argument("--r-f", type=float, dest="r_f", help="Discount on accepting states")
    parser.add_argument("--gamma-f", type=float, dest="gamma_f", help="Discount elsewhere")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--reps", type=int, help="Independent repetitions")
    parser.add_argument("--workers", type=int, help="Parallel repetition workers")
    parser.add_argument("--alpha", type=float, help="Step size for the constant schedule")
    parser.add_argument("--alpha-schedule", choices=[s.value for s in AlphaSchedule])
    parser.add_argument("--alpha-exponent", type=float, help="ω of the polynomial schedule Count^-ω")
    parser.add_argument("--no-epsilon-floor", action="store_true", help="Let ε decay as 1/episode to zero")
    parser.add_argument("--no-oracle", action="store_true", help="Skip the exact cross-check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltl-synth", description="LTL policy synthesis with E-LDGBA reward shaping")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--log-format", choices=["text", "json"])
    commands = parser.add_subparsers(dest="command", required=True)

    learn = commands.add_parser("learn", help="Q-learning on the embedded product")
    _add_task_arguments(learn)
    _add_learning_arguments(learn)

    oracle = commands.add_parser("oracle", help="Exact analysis of the enumerated product")
    _add_task_arguments(oracle)

    simulate = commands.add_parser("simulate", help="Roll out a stored policy")
    simulate.add_argument("--policy", required=True, help="policy.json written by learn")
    simulate.add_argument("--steps", type=int, default=25)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out", help="Trace CSV path; printed when omitted")

    comparison = commands.add_parser("compare", help="Reward collection under several embedding modes")
    _add_task_arguments(comparison)
    _add_learning_arguments(comparison)
    comparison.add_argument("--modes", nargs="+", choices=MODES, default=["eldgba", "ldba-baseline"])

    export = commands.add_parser("export", help="Write a model, automaton or product as JSON")
    export.add_argument("kind", choices=EXPORT_KINDS)
    export.add_argument("--model", default="fig1")
    export.add_argument("--automaton", default="phi_e")
    export.add_argument("--mode", choices=MODES, default=ExperimentMode.ELDGBA.value)
    export.add_argument("--deferred-reset", action="store_true")
    export.add_argument("--cap", type=int)
    export.add_argument("--out", help="Output file; printed when omitted")
    return parser


def overrides_from(args: argparse.Namespace) -> Dict[str, Any]:
    """Explicit flags as a nested ExperimentConfig override"""
    top = {
        "model": args.model,
        "automaton": args.automaton,
        "mode": args.mode,
        "deferred_reset": args.deferred_reset,
        "enumeration_cap": args.cap,
        "output_dir": args.out,
        "repetitions": getattr(args, "reps", None),
        "workers": getattr(args, "workers", None),
    }
    learn = {
        "episodes": getattr(args, "episodes", None),
        "tau": getattr(args, "tau", None),
        "seed": getattr(args, "seed", None),
        "alpha": getattr(args, "alpha", None),
        "alpha_schedule": getattr(args, "alpha_schedule", None),
        "alpha_exponent": getattr(args, "alpha_exponent", None),
    }
    reward = {"r_f": getattr(args, "r_f", None), "gamma_f": getattr(args, "gamma_f", None)}
    overrides = {k: v for k, v in top.items() if v is not None}
    if getattr(args, "no_oracle", False):
        overrides["oracle"] = False
    learn = {k: v for k, v in learn.items() if v is not None}
    if getattr(args, "no_epsilon_floor", False):
        learn["epsilon_floor"] = 0.0
    reward = {k: v for k, v in reward.items() if v is not None}
    if reward:
        learn["reward"] = reward
    if learn:
        overrides["learn"] = learn
    return overrides


def _emit_json(document: Any, path: Optional[str]) -> None:
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        write_json(target, document)
        logger.info(f"Wrote {target}")
    else:
        json.dump(document, sys.stdout, indent=2, sort_keys=True, ensure_ascii=False)
        sys.stdout.write("\n")


def cmd_learn(args: argparse.Namespace) -> int:
    cfg = build_config(args.preset, args.config, overrides_from(args))
    result = run_experiment(cfg)
    write_artifacts(result)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = build_config(args.preset, args.config, overrides_from(args))
    env, model, _ = build_environment(cfg.model, cfg.automaton, cfg.mode, cfg.deferred_reset, cfg.learn.reward)
    cells = grid_cells(model)
    extra_starts = [env.start_state(s) for _, _, s in cells] if cells else []
    outcome = run_oracle(env, cfg.enumeration_cap, extra_starts, brute_force=True)
    if outcome is None:
        logger.error(f"Product exceeds the enumeration cap of {cfg.enumeration_cap} states")
        return EXIT_FAILURE
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "oracle_report.json", outcome.report)
    if cells:
        write_csv(out / "heatmap.csv", build_heatmap(env, cells, oracle=outcome))
    logger.info(f"Oracle artifacts written to {out}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.steps < 0:
        logger.error(f"Invalid input: --steps must be non-negative, got {args.steps}")
        return EXIT_INVALID
    trace = simulate_policy(read_json(args.policy), args.steps, args.seed)
    if args.out:
        write_csv(args.out, trace)
        logger.info(f"Trace written to {args.out}")
    else:
        trace.to_csv(sys.stdout, index=False)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = build_config(args.preset, args.config, overrides_from(args))
    table, summary = compare(cfg, [ExperimentMode(m) for m in args.modes])
    write_comparison(table, summary, cfg.output_dir)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    document = export_document(
        args.kind, args.model, args.automaton, ExperimentMode(args.mode), args.deferred_reset, args.cap
    )
    _emit_json(document, args.out)
    return 0


COMMANDS = {
    "learn": cmd_learn,
    "oracle": cmd_oracle,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "export": cmd_export,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_format)
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, *INVALID_INPUT) as exc:
        logger.error(f"Invalid input: {exc}")
        return EXIT_INVALID
    except SynthesisError as exc:
        logger.error(f"{args.command} failed: {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
