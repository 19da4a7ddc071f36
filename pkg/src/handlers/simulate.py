"""Handler for the simulate command."""

from pathlib import Path
from typing import List, Optional

from src.models.errors import ExitCode
from src.models.simulation import Trajectory
from src.simulation.engine import detect_convergence, effective_window, simulate
from src.storage.export import (
    write_json,
    write_popularity_csv,
    write_state_csv,
    write_totals_csv,
)
from src.storage.manifest import build_manifest, write_manifest
from src.storage.scenario_file import load_scenario
from src.utils.formatters import format_convergence_summary, print_result
from src.utils.logging import get_logger

logger = get_logger(__name__)

STATE_FILE = "state.csv"
POPULARITY_FILE = "pi.csv"
TOTALS_FILE = "totals.csv"
REPORT_FILE = "report.json"


def write_trajectory(traj: Trajectory, out_dir: Path) -> List[Path]:
    """Write the state, popularity and totals CSVs of a trajectory."""
    return [
        write_state_csv(traj, out_dir / STATE_FILE),
        write_popularity_csv(traj, out_dir / POPULARITY_FILE),
        write_totals_csv(traj, out_dir / TOTALS_FILE),
    ]


def cmd_simulate(
    scenario_path: Path,
    out_dir: Path,
    seed_override: Optional[int] = None,
    print_summary: bool = True,
) -> int:
    """
    Simulate a scenario and write its trajectory, report and manifest.

    Args:
        scenario_path: Scenario JSON file
        out_dir: Output directory, created if missing
        seed_override: Replaces the seeds of the scenario file
        print_summary: Print the run summary on standard output

    Returns:
        Exit code 0; failures raise and are mapped by the caller

    Raises:
        ScenarioParseError: If the scenario file cannot be parsed
        ZeroTotalAttentionError: If popularity becomes undefined
    """
    loaded = load_scenario(scenario_path, seed_override)
    sc = loaded.scenario

    traj = simulate(sc)
    report = detect_convergence(traj, sc.tol, effective_window(traj))

    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = write_trajectory(traj, out_dir)
    outputs.append(write_json(report, out_dir / REPORT_FILE))

    manifest = build_manifest(
        "simulate",
        scenario_path,
        loaded.digest,
        loaded.seeds,
        outputs,
        seed_override=seed_override,
    )
    outputs.append(write_manifest(manifest, out_dir))

    logger.info("simulate_outputs_written", out_dir=str(out_dir), files=len(outputs))
    if print_summary:
        print_result(format_convergence_summary(report, outputs, ExitCode.OK))
    return ExitCode.OK
