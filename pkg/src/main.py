#!/usr/bin/env python3
"""Main entry point for the popdyn command-line interface."""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, NoReturn, Optional, Sequence

from src.config import settings
from src.constants import APP_NAME, VERSION
from src.handlers import (
    cmd_equilibrium,
    cmd_gen_graph,
    cmd_series,
    cmd_simulate,
    cmd_sweep,
    cmd_verify,
)
from src.models.errors import ExitCode
from src.utils.error_handler import emit_error, handle_parse_error, run_command
from src.utils.logging import configure_logging, get_logger


class CommandLineParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as one line of JSON."""

    def error(self, message: str) -> NoReturn:
        response = handle_parse_error(message, {"usage": self.format_usage().strip()})
        sys.exit(emit_error(response))


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return number


def build_parser() -> argparse.ArgumentParser:
    """
    Build the command-line parser.

    Returns:
        Parser with one subcommand per operation
    """
    parser = CommandLineParser(
        prog=APP_NAME,
        description="Popularity dynamics - simulate and analyse the coupled "
        "Friedkin-Johnsen attention model",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Simulate a scenario and write CSV/JSON outputs
  popdyn simulate scenario.json --out-dir runs/fig1

  # Print the predicted equilibrium without simulating
  popdyn equilibrium scenario.json

  # Compare simulation and theory
  popdyn verify scenario.json --out-dir runs/check

  # Closed form of sum_k k^2 0.5^k
  popdyn series 2 0.5

  # Draw an influence graph
  popdyn gen-graph --n 20 --p 0.2 --seed 7

Exit codes:
  0 success, 1 internal error, 2 parse error, 3 model error,
  4 hypotheses unmet, 5 verification failed

Environment Variables:
  POPDYN_LOG_LEVEL     Logging level (default: INFO)
  POPDYN_LOG_JSON      Output logs in JSON format (default: false)
  POPDYN_JOBS          Default number of sweep workers (default: 1)
        """,
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {VERSION}",
        help="Show version information and exit",
    )

    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Set logging level (overrides POPDYN_LOG_LEVEL environment variable)",
    )

    parser.add_argument(
        "--log-json",
        action="store_true",
        default=None,
        help="Output logs in JSON format (overrides POPDYN_LOG_JSON)",
    )

    parser.add_argument(
        "--no-timestamp",
        action="store_true",
        default=False,
        help="Disable timestamps in log output",
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", type=Path, default=None, help="Output directory")
    common.add_argument(
        "--seed-override",
        type=_seed,
        default=None,
        help="Replace every seed of the scenario file",
    )
    common.add_argument(
        "--jobs",
        type=_positive_int,
        default=None,
        help="Parallel workers for sweeps (default: POPDYN_JOBS)",
    )

    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=CommandLineParser
    )

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="Simulate a scenario and export it"
    )
    simulate.add_argument("scenario", type=Path, help="Scenario JSON file")

    equilibrium = subparsers.add_parser(
        "equilibrium", parents=[common], help="Print the predicted limits of a scenario"
    )
    equilibrium.add_argument("scenario", type=Path, help="Scenario JSON file")

    verify = subparsers.add_parser(
        "verify", parents=[common], help="Compare simulation against theory"
    )
    verify.add_argument("scenario", type=Path, help="Scenario JSON file")

    series = subparsers.add_parser(
        "series", parents=[common], help="Closed form of sum_k k^n lambda^k"
    )
    series.add_argument("n", type=int, help="Exponent n >= 0")
    series.add_argument("lam", type=float, metavar="lambda", help="Ratio in (0, 1)")

    gen_graph = subparsers.add_parser(
        "gen-graph", parents=[common], help="Draw an Erdős-Rényi influence matrix"
    )
    gen_graph.add_argument("--n", type=int, required=True, help="Number of users")
    gen_graph.add_argument("--p", type=float, required=True, help="Edge probability")
    gen_graph.add_argument("--seed", type=_seed, required=True, help="Generator seed")

    sweep = subparsers.add_parser(
        "sweep", parents=[common], help="Simulate several scenarios in parallel"
    )
    sweep.add_argument("scenarios", type=Path, nargs="+", help="Scenario JSON files")

    return parser


def _dispatch(args: argparse.Namespace) -> int:
    out_dir: Optional[Path] = args.out_dir
    params: Dict[str, Any] = {
        key: [str(v) for v in value] if isinstance(value, list) else value
        for key, value in vars(args).items()
        if key not in ("log_level", "log_json", "no_timestamp")
    }

    if args.command == "simulate":
        return run_command(
            "simulate",
            cmd_simulate,
            params,
            scenario_path=args.scenario,
            out_dir=out_dir or Path("."),
            seed_override=args.seed_override,
        )
    if args.command == "equilibrium":
        return run_command(
            "equilibrium",
            cmd_equilibrium,
            params,
            scenario_path=args.scenario,
            seed_override=args.seed_override,
        )
    if args.command == "verify":
        return run_command(
            "verify",
            cmd_verify,
            params,
            scenario_path=args.scenario,
            out_dir=out_dir or Path("."),
            seed_override=args.seed_override,
        )
    if args.command == "series":
        return run_command("series", cmd_series, params, n=args.n, lam=args.lam)
    if args.command == "gen-graph":
        return run_command(
            "gen-graph",
            cmd_gen_graph,
            params,
            n=args.n,
            p=args.p,
            seed=args.seed,
            out_dir=out_dir,
        )
    return run_command(
        "sweep",
        cmd_sweep,
        params,
        scenario_paths=args.scenarios,
        out_dir=out_dir or Path("."),
        jobs=args.jobs or settings.jobs,
        seed_override=args.seed_override,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, configure logging and run one subcommand.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    # Logs go to stderr even for usage errors reported during parsing
    configure_logging(
        log_level=settings.log_level,
        json_logs=settings.log_json,
        include_timestamp=settings.log_include_timestamp,
    )

    args = build_parser().parse_args(argv)

    # Override settings with command-line arguments if provided
    if args.log_level is not None:
        settings.log_level = args.log_level

    if args.log_json is not None:
        settings.log_json = args.log_json

    if args.no_timestamp:
        settings.log_include_timestamp = False

    configure_logging(
        log_level=settings.log_level,
        json_logs=settings.log_json,
        include_timestamp=settings.log_include_timestamp,
    )

    logger = get_logger(__name__)
    logger.debug(
        "cli_starting",
        command=args.command,
        log_level=settings.log_level,
        log_format="json" if settings.log_json else "console",
    )

    try:
        return _dispatch(args)
    except KeyboardInterrupt:
        logger.info("cli_interrupted", reason="keyboard_interrupt")
        return int(ExitCode.INTERNAL)


def main(argv: Optional[Sequence[str]] = None) -> NoReturn:
    """
    Run the popdyn command-line interface and exit with its exit code.

    Exits:
        0: Success
        1: Internal error
        2: Parse error
        3: Model error
        4: Hypotheses unmet
        5: Verification failed
    """
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
