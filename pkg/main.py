"""Command-line entry point.

    python main.py <experiment> [--gamma G] [--alice t,a,b] [--bob t,a,b]
                   [--format csv|json] [--seed N] [--game FILE] [--points N]
                   [--players N] [--quantum] [--log-level LEVEL] [--log-dir DIR]

Exit status: 0 on success, 1 for usage errors, 2 for computation errors.
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from pydantic import ValidationError

from config.logging_config import setup_logging
from config.settings import load_settings
from exceptions import QuantumGameException
from workflow.experiments import ExperimentOptions, available_experiments, run_experiment
from workflow.output import FORMATS, emit

USAGE_EXIT = 1
COMPUTATION_EXIT = 2

logger = logging.getLogger("workflow")


class UsageError(Exception):
    pass


class ExperimentParser(argparse.ArgumentParser):
    """Reports usage problems as a single line instead of printing usage and exiting 2."""

    def error(self, message: str):
        raise UsageError(message)


def parse_angles(text: str) -> Tuple[float, float, float]:
    """Parse 't,a,b' in radians."""
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected theta,alpha,beta in radians, got '{text}'")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"angles must be numbers, got '{text}'")


def build_parser() -> ExperimentParser:
    common = ExperimentParser(add_help=False)
    common.add_argument("--gamma", type=float, help="Entanglement level in [0, pi/2] (radians)")
    common.add_argument("--alice", type=parse_angles, help="Alice's SU(2) strategy theta,alpha,beta")
    common.add_argument("--bob", type=parse_angles, help="Bob's SU(2) strategy theta,alpha,beta")
    common.add_argument("--format", choices=FORMATS, default="csv", help="Output format")
    common.add_argument("--seed", type=int, help="Random seed (default from QGAMES_SEED or 0)")
    common.add_argument("--game", help="JSON game file")
    common.add_argument("--points", type=int, help="Number of sample points")
    common.add_argument("--players", type=int, default=4, help="Players in the minority game")
    common.add_argument("--quantum", action="store_true", help="Also run the quantum minority search")
    common.add_argument("--log-level", help="Logging level (default from QGAMES_LOG_LEVEL or WARNING)")
    common.add_argument("--log-dir", help="Directory for log files")

    parser = ExperimentParser(
        prog="main.py",
        description="Quantum game experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="experiment", metavar="experiment")
    for name, description in available_experiments().items():
        subparsers.add_parser(name, parents=[common], help=description, description=description)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        try:
            settings = load_settings()
        except ValueError as e:
            raise UsageError(f"bad environment setting: {e}".splitlines()[0]) from e
        args = parser.parse_args(argv)
        if args.experiment is None:
            raise UsageError(f"missing experiment; choose from {', '.join(available_experiments())}")
        try:
            setup_logging((args.log_level or settings.log_level).upper(), args.log_dir or settings.log_dir)
        except ValueError as e:
            raise UsageError(f"bad logging setup: {e}".splitlines()[0]) from e
        options = ExperimentOptions(
            gamma=args.gamma,
            alice=args.alice,
            bob=args.bob,
            seed=settings.seed if args.seed is None else args.seed,
            game=args.game,
            points=args.points,
            players=args.players,
            quantum=args.quantum,
        )
        result = run_experiment(args.experiment, options)
        sys.stdout.write(emit(result, args.format))
        return 0
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except ValidationError as e:
        first = e.errors()[0]
        print(f"error: --{first['loc'][0]}: {first['msg']}", file=sys.stderr)
        return USAGE_EXIT
    except QuantumGameException as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        print(f"error: {type(e).__name__}: {e}".splitlines()[0], file=sys.stderr)
        return COMPUTATION_EXIT


if __name__ == "__main__":
    sys.exit(main())
