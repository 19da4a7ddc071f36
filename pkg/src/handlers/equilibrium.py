"""Handler for the equilibrium command."""

from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from src.models.equilibria import EquilibriumReport, Regime
from src.models.errors import ExitCode, PopularityModelError
from src.models.simulation import Scenario
from src.numerics.dynamics import totals
from src.numerics.equilibria import (
    augmented_limit,
    classify_regime,
    consensus_functional,
    consensus_values,
    fj_decoupled_fixed_point,
    general_fixed_point,
    no_network_limit,
    no_network_rate,
    schur_certificate,
    z_limit,
)
from src.numerics.diagnostics import invariant_measure_gap
from src.numerics.series import phi_distance_bound
from src.numerics.spectral import stationary_distribution
from src.storage.scenario_file import load_scenario
from src.utils.formatters import print_result
from src.utils.logging import get_logger

logger = get_logger(__name__)


def _no_network(sc: Scenario) -> Dict[str, Any]:
    pi_star, x_star = no_network_limit(sc.params, sc.q)
    return {
        "popularity": pi_star.pi.tolist(),
        "x": x_star.x.tolist(),
        "rate": no_network_rate(sc.params, sc.q),
    }


def _no_quality(sc: Scenario, warnings: List[str]) -> Dict[str, Any]:
    system = augmented_limit(sc.params, sc.P, sc.q.q_tot)
    z0 = totals(sc.x0)
    phi = consensus_functional(sc.params, sc.P, z0, require_unit_bound=False)
    result: Dict[str, Any] = {
        "phi": phi.tolist(),
        "consensus_values": consensus_values(phi, sc.x0).tolist(),
        "phi_distance_bound": phi_distance_bound(
            system.lambda1, sc.n, z0.deviation_from_one()
        ).model_dump(),
        "invariant_measure_gap": invariant_measure_gap(phi, sc.P),
    }
    try:
        phi_tilde = stationary_distribution(system.U_tilde)
    except PopularityModelError as exc:
        warnings.append(f"{exc.error_type.value}: {exc.message}")
    else:
        result["phi_tilde"] = phi_tilde.tolist()
        result["phi_distance"] = float(np.sum(np.abs(phi - phi_tilde)))
        result["consensus_values_tilde"] = consensus_values(phi_tilde, sc.x0).tolist()
    return result


def _no_recommendation(sc: Scenario) -> Dict[str, Any]:
    columns = [fj_decoupled_fixed_point(sc.params, sc.P, sc.q, i) for i in range(sc.m)]
    return {
        "x": np.column_stack(columns).tolist(),
        "popularity": (sc.q.q / sc.q.q_tot).tolist() if sc.q.q_tot > 0 else None,
    }


def _general(sc: Scenario) -> Dict[str, Any]:
    system = augmented_limit(sc.params, sc.P, sc.q.q_tot)
    limits = [general_fixed_point(system, sc.q, i) for i in range(sc.m)]
    return {
        "x": np.column_stack([s[:-1] for s in limits]).tolist(),
        "popularity": [float(s[-1]) for s in limits],
    }


def predict_equilibrium(
    sc: Scenario,
) -> tuple[EquilibriumReport, List[PopularityModelError]]:
    """
    Regime, certificate and predicted limits of a scenario.

    Failures of the closed forms are collected rather than raised, so the
    certificate is always available.
    """
    regime = classify_regime(sc.params, strict=False)
    certificate = schur_certificate(sc.params, sc.P, regime, q=sc.q, z0=totals(sc.x0))
    warnings = [f"hypothesis unmet: {name}" for name in certificate.unmet()]
    errors: List[PopularityModelError] = []

    z_star: Optional[List[float]] = None
    lambda2: Optional[float] = None
    fixed_point: Dict[str, Any] = {}
    try:
        z_star = z_limit(sc.params, sc.P, sc.q.q_tot).tolist()
        if regime is not Regime.NO_NETWORK:
            lambda2 = augmented_limit(sc.params, sc.P, sc.q.q_tot).lambda2
    except PopularityModelError as exc:
        errors.append(exc)

    try:
        if regime is Regime.NO_NETWORK:
            fixed_point = _no_network(sc)
        elif regime is Regime.NO_QUALITY:
            fixed_point = _no_quality(sc, warnings)
        elif regime is Regime.NO_RECOMMENDATION:
            fixed_point = _no_recommendation(sc)
        else:
            fixed_point = _general(sc)
    except PopularityModelError as exc:
        errors.append(exc)

    for exc in errors:
        warnings.append(f"{exc.error_type.value}: {exc.message}")
        logger.warning(
            "equilibrium_unavailable",
            regime=regime.value,
            error_type=exc.error_type.value,
        )

    report = EquilibriumReport(
        regime=regime,
        certificate=certificate,
        z_star=z_star,
        lambda1=certificate.lambda1,
        lambda2=lambda2,
        fixed_point=fixed_point,
        warnings=warnings,
    )
    return report, errors


def cmd_equilibrium(scenario_path: Path, seed_override: Optional[int] = None) -> int:
    """
    Print the regime, certificate and predicted limits of a scenario.

    Nothing is simulated.

    Returns:
        0 when the hypotheses hold, 4 when they do not (the certificate is
        still printed)

    Raises:
        ScenarioParseError: If the scenario file cannot be parsed
        PopularityModelError: If a closed form fails although its
            hypotheses hold
    """
    sc = load_scenario(scenario_path, seed_override).scenario
    report, errors = predict_equilibrium(sc)

    hypothesis_failure = not report.certificate.hypotheses_hold or any(
        exc.exit_code == ExitCode.HYPOTHESES for exc in errors
    )
    if errors and not hypothesis_failure:
        raise errors[0]

    print_result(report)
    return ExitCode.HYPOTHESES if hypothesis_failure else ExitCode.OK
