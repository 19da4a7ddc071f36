"""Handler for the sweep command: independent scenarios run in parallel."""

import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from src.config import settings
from src.handlers.simulate import cmd_simulate
from src.models.errors import InvalidInputError
from src.utils.error_handler import run_command
from src.utils.formatters import format_sweep_result, print_result
from src.utils.logging import configure_logging, get_logger

logger = get_logger(__name__)


def _configure_worker(resolved_settings: Dict[str, Any], parent_pid: int) -> None:
    """Apply the parent's resolved settings inside a worker process."""
    if os.getpid() == parent_pid:
        return
    for key, value in resolved_settings.items():
        setattr(settings, key, value)
    configure_logging(
        log_level=settings.log_level,
        json_logs=settings.log_json,
        include_timestamp=settings.log_include_timestamp,
    )


def _run_one(
    scenario_path: Path,
    out_dir: Path,
    seed_override: Optional[int],
    resolved_settings: Dict[str, Any],
    parent_pid: int,
) -> Dict[str, Any]:
    _configure_worker(resolved_settings, parent_pid)
    exit_code = run_command(
        "simulate",
        cmd_simulate,
        {"scenario": str(scenario_path), "out_dir": str(out_dir)},
        scenario_path=scenario_path,
        out_dir=out_dir,
        seed_override=seed_override,
        print_summary=False,
    )
    return {
        "scenario": str(scenario_path),
        "out_dir": str(out_dir),
        "exit_code": exit_code,
    }


def cmd_sweep(
    scenario_paths: Sequence[Path],
    out_dir: Path,
    jobs: int = 1,
    seed_override: Optional[int] = None,
) -> int:
    """
    Simulate several scenarios, each into its own subdirectory of `out_dir`.

    Args:
        scenario_paths: Scenario files; their stems name the subdirectories
        out_dir: Parent output directory
        jobs: Number of parallel workers
        seed_override: Applied to every scenario

    Returns:
        The largest exit code of the individual runs

    Raises:
        InvalidInputError: If two scenarios share a file stem
    """
    stems = [path.stem for path in scenario_paths]
    if len(set(stems)) != len(stems):
        raise InvalidInputError(
            "scenario file names must be distinct", details={"stems": stems}
        )

    logger.info("sweep_started", scenarios=len(scenario_paths), jobs=jobs)
    # Workers are fresh processes, so command-line overrides travel with them
    resolved_settings = settings.model_dump()
    runs: List[Dict[str, Any]] = Parallel(n_jobs=jobs)(
        delayed(_run_one)(
            path, out_dir / path.stem, seed_override, resolved_settings, os.getpid()
        )
        for path in scenario_paths
    )
    result = format_sweep_result(runs, out_dir)
    print_result(result)
    return int(result["exit_code"])
