"""Formatting of command results for standard output."""

from pathlib import Path
from typing import Any, Dict, List, Optional

from src.models.simulation import ConvergenceReport
from src.storage.export import to_json_text


def format_convergence_summary(
    report: ConvergenceReport, outputs: List[Path], exit_code: int
) -> Dict[str, Any]:
    """
    Condense a convergence report into the summary printed by a command.

    Args:
        report: Report of the run
        outputs: Files written by the command
        exit_code: Exit code the command returns

    Returns:
        Dictionary with the headline numbers and output file names
    """
    summary: Dict[str, Any] = {
        "converged": report.converged,
        "t_converged": report.t_converged,
        "terminal_time": report.terminal_state.t,
        "terminal_popularity": report.terminal_popularity.pi.tolist(),
        "estimated_rate": report.estimated_rate,
        "exit_code": exit_code,
        "outputs": [path.name for path in outputs],
    }
    if report.regime is not None:
        summary["regime"] = report.regime.value
        summary["theory_delta"] = report.theory_delta
        summary["hypotheses"] = report.hypotheses
    if report.warnings:
        summary["warnings"] = report.warnings
    return summary


def format_series_result(
    n: int,
    lam: float,
    value: float,
    coefficients: List[float],
    partial: float,
) -> Dict[str, Any]:
    """Closed-form value, polynomial and brute-force check of a power series."""
    return {
        "n": n,
        "lambda": lam,
        "value": value,
        "coefficients": coefficients,
        "partial_sum": partial,
        "relative_difference": abs(value - partial) / abs(value),
    }


def format_sweep_result(
    runs: List[Dict[str, Any]], out_dir: Optional[Path]
) -> Dict[str, Any]:
    return {
        "runs": runs,
        "out_dir": str(out_dir) if out_dir is not None else None,
        "exit_code": max((run["exit_code"] for run in runs), default=0),
    }


def print_result(payload: Any) -> None:
    """Print a command result as JSON on standard output."""
    print(to_json_text(payload))
