# src/indoor_training/cli.py

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pydantic

from .analysis.report import suite_report
from .core.builder import build_mdp
from .core.io import read_mdp, write_mdp
from .core.validate import validate_mdp
from .games.layout import BUILTIN_LAYOUTS, load_layout, make_game
from .harness.config import (
    default_workers,
    experiment_spec_from_config,
    load_experiment_config,
    load_suite_config,
    suite_pairs_from_config,
)
from .harness.persistence import read_suite, write_run
from .harness.runner import MdpStore, run_experiment
from .harness.suite import run_suite
from .models.base import GameKind
from .models.noise import NoiseSpec
from .noise.delta import inject_noise, legal_shape_distance, non_standard_mass, table_distance
from .utils.exceptions import (
    IncompatibleEnvironments,
    IndoorTrainingError,
    LayoutInvalid,
    ValidationError,
)

logger = logging.getLogger("indoor_training")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2

MDP_EXPORT = "mdp.json"
NOISY_EXPORT = "mdp_noisy.json"
VALIDATION_REPORT = "validation.txt"


class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input: exit 1 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _complete(command: str, **fields: Any) -> int:
    record: Dict[str, Any] = {"status": "ok", "command": command, **fields}
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def cmd_build_mdp(args: argparse.Namespace) -> int:
    if args.config:
        spec = experiment_spec_from_config(load_experiment_config(args.config))
        game = spec.train_env.game
    else:
        if not args.layout:
            raise ValidationError("build-mdp needs --config or --layout")
        kind = GameKind(args.game) if args.game else BUILTIN_LAYOUTS.get(args.layout)
        if kind is None:
            raise ValidationError(f"--game is required for custom layout '{args.layout}'")
        game = make_game(kind, load_layout(args.layout))
    mdp = build_mdp(game, family_support=args.family_support)
    report = validate_mdp(mdp)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = write_mdp(mdp, out_dir / MDP_EXPORT)
    (out_dir / VALIDATION_REPORT).write_text(report.summary() + "\n", encoding="utf-8")
    if not report.ok:
        logger.error(report.summary())
        return EXIT_INVALID
    return _complete(
        "build-mdp",
        game=game.label,
        n_states=mdp.n_states,
        rows=len(mdp.transitions),
        mdp=str(path),
    )


def cmd_inject_noise(args: argparse.Namespace) -> int:
    mdp = read_mdp(args.mdp)
    noise = NoiseSpec(std=args.std, seed=args.seed if args.seed is not None else 0)
    delta = inject_noise(mdp, noise)
    noisy = delta.as_mdp()
    out_dir = Path(args.out_dir)
    path = write_mdp(noisy, out_dir / NOISY_EXPORT)
    return _complete(
        "inject-noise",
        std=noise.std,
        seed=noise.seed,
        degenerate_rows=len(delta.degenerate_rows),
        mean_tv_distance=table_distance(mdp.transitions, noisy.transitions),
        non_standard_mass=non_standard_mass(mdp.transitions, noisy.transitions),
        legal_shape_distance=legal_shape_distance(mdp.transitions, noisy.transitions),
        mdp=str(path),
    )


def cmd_run(args: argparse.Namespace) -> int:
    spec = experiment_spec_from_config(load_experiment_config(args.config), seed=args.seed)
    store = MdpStore()
    result = run_experiment(spec, workers=default_workers(args.workers), store=store)
    out_dir = write_run(result, args.out_dir, store.mdp_for(spec.train_env.game).legal_pairs())
    return _complete(
        "run",
        experiment=spec.label,
        fingerprint=spec.fingerprint,
        checkpoints=len(result.curve),
        final_mean_return=result.final_mean,
        out_dir=str(out_dir),
    )


def cmd_suite(args: argparse.Namespace) -> int:
    config = load_suite_config(args.config)
    pairs = suite_pairs_from_config(config, seed=args.seed)
    suite = run_suite(pairs, out_dir=args.out_dir, workers=default_workers(args.workers))
    alpha = config.acceptance.alpha if config.acceptance is not None else None
    report = suite_report(suite, alpha=alpha) if suite.completed_pairs else None
    if report is not None:
        report.write(args.out_dir)
    if not suite.ok:
        for failure in suite.failures:
            print(f"FAILED {failure.label}: {failure.error}", file=sys.stderr)
        print(json.dumps({
            "status": "partial",
            "command": "suite",
            "pairs": len(suite.pairs),
            "failed_runs": len(suite.failures),
            "out_dir": str(args.out_dir),
        }, sort_keys=True))
        return EXIT_RUNTIME
    if alpha is not None and (report is None or not report.effect_targets):
        logger.error(f"No pair shows R_G >= R_L at p < {alpha:g}")
        print(json.dumps({
            "status": "no_effect",
            "command": "suite",
            "pairs": len(suite.pairs),
            "alpha": alpha,
            "out_dir": str(args.out_dir),
        }, sort_keys=True))
        return EXIT_RUNTIME
    effect = {"effect_pairs": len(report.effect_targets)} if alpha is not None else {}
    return _complete("suite", pairs=len(suite.pairs), out_dir=str(args.out_dir), **effect)


def cmd_analyze(args: argparse.Namespace) -> int:
    suite = read_suite(args.results_dir)
    report = suite_report(suite)
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.results_dir)
    csv_path, summary_path = report.write(out_dir)
    return _complete(
        "analyze",
        pairs=len(report.records),
        sign_discrepancy=report.sign_discrepancy,
        report=str(csv_path),
        summary=str(summary_path),
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="More logging (-v info, -vv debug)")

    parser = _Parser(prog="indoor-training", description="Indoor-training effect lab")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-mdp", parents=[common], help="Enumerate a game into an exact MDP")
    p.add_argument("--config", help="Experiment config; its train environment is built")
    p.add_argument("--layout", help="Built-in layout name or layout file path")
    p.add_argument("--game", choices=[k.value for k in GameKind], help="Game of a custom layout")
    p.add_argument("--family-support", action="store_true",
                   help="Enumerate the index shared by every variant of the layout")
    p.add_argument("--out-dir", default=".", help="Output directory")
    p.set_defaults(handler=cmd_build_mdp)

    p = sub.add_parser("inject-noise", parents=[common], help="Perturb an exported MDP")
    p.add_argument("--mdp", required=True, help="MDP export written by build-mdp")
    p.add_argument("--std", type=float, required=True, help="Noise standard deviation")
    p.add_argument("--seed", type=int, help="Noise seed (default 0)")
    p.add_argument("--out-dir", default=".", help="Output directory")
    p.set_defaults(handler=cmd_inject_noise)

    for name, handler, help_text in (
        ("run", cmd_run, "Train and evaluate one agent population"),
        ("suite", cmd_suite, "Run Learnability/Generalization pairs"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--config", required=True, help="Config file (JSON)")
        p.add_argument("--seed", type=int, help="Override protocol.base_seed")
        p.add_argument("--workers", type=int, help="Parallel workers (default: $INDOOR_TRAINING_WORKERS or 1)")
        p.add_argument("--out-dir", default="results", help="Output directory")
        p.set_defaults(handler=handler)

    p = sub.add_parser("analyze", parents=[common], help="Report on a suite results directory")
    p.add_argument("--results-dir", required=True, help="Directory written by the suite command")
    p.add_argument("--out-dir", help="Where to write the report (default: the results dir)")
    p.set_defaults(handler=cmd_analyze)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    if getattr(args, "workers", None) is not None and args.workers < 1:
        print(f"error: --workers must be >= 1, got {args.workers}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.handler(args)
    except (ValidationError, LayoutInvalid, IncompatibleEnvironments, pydantic.ValidationError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (IndoorTrainingError, OSError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
