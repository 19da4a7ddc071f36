"""Handler for the verify command."""

from pathlib import Path
from typing import Optional

from src.config import settings
from src.models.errors import ErrorResponse, ErrorType, ExitCode
from src.simulation.verification import verification_passed, verify_regime
from src.storage.export import write_json
from src.storage.manifest import build_manifest, write_manifest
from src.storage.scenario_file import load_scenario
from src.utils.error_handler import emit_error
from src.utils.formatters import format_convergence_summary, print_result
from src.utils.logging import get_logger

logger = get_logger(__name__)

REPORT_FILE = "verify_report.json"


def cmd_verify(
    scenario_path: Path, out_dir: Path, seed_override: Optional[int] = None
) -> int:
    """
    Simulate a scenario and compare its terminal state with the theory.

    The report is written whether or not the comparison passes.

    Returns:
        0 when the verification passes, 5 otherwise

    Raises:
        ScenarioParseError: If the scenario file cannot be parsed
        AmbiguousRegimeError: If more than one weight vector vanishes
    """
    loaded = load_scenario(scenario_path, seed_override)
    sc = loaded.scenario
    report = verify_regime(sc)
    passed = verification_passed(sc, report)
    exit_code = ExitCode.OK if passed else ExitCode.VERIFICATION

    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = [write_json(report, out_dir / REPORT_FILE)]
    manifest = build_manifest(
        "verify",
        scenario_path,
        loaded.digest,
        loaded.seeds,
        outputs,
        seed_override=seed_override,
        exit_code=exit_code,
    )
    outputs.append(write_manifest(manifest, out_dir))

    print_result(format_convergence_summary(report, outputs, exit_code))
    if not passed:
        emit_error(
            ErrorResponse(
                error=ErrorType.VERIFICATION_FAILED,
                message="simulation does not match the predicted limit",
                exit_code=ExitCode.VERIFICATION,
                details={
                    "theory_delta": report.theory_delta,
                    "threshold": sc.tol * settings.verify_tolerance_factor,
                    "converged": report.converged,
                },
            ).model_dump()
        )
    logger.info(
        "verification_finished",
        passed=passed,
        regime=report.regime.value if report.regime else None,
    )
    return exit_code
