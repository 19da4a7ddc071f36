"""Closed-form limits, augmented matrices and stability certificates."""

import time
from typing import Optional, Tuple

import numpy as np

from src.config import settings
from src.constants import UNIT_BOUND_SLACK
from src.models.equilibria import AugmentedSystem, Regime, SchurCertificate
from src.models.errors import (
    AmbiguousRegimeError,
    DimensionMismatchError,
    HypothesisViolatedError,
    IndexOutOfRangeError,
    NoConvergenceError,
    SingularSystemError,
    StabilityConditionUnmetError,
    ZeroTotalAttentionError,
)
from src.models.graph import NodeSet, RowStochasticMatrix
from src.models.state import (
    AttentionState,
    AttentionTotals,
    ModelParams,
    PopularityVector,
    QualityVector,
)
from src.numerics.dynamics import augmented_state, check_dimensions, totals_step_array
from src.numerics.graph import every_node_reaches, is_aperiodic_node, reaching_set
from src.numerics.linalg import solve_checked
from src.numerics.spectral import spectral_radius, subdominant_magnitude
from src.utils.logging import get_logger, log_solver

logger = get_logger(__name__)


def vanishes(weights: np.ndarray, cutoff: Optional[float] = None) -> bool:
    """Whether every component is below the zero cutoff."""
    limit = settings.zero_cutoff if cutoff is None else cutoff
    return bool(np.all(weights < limit))


def classify_regime(params: ModelParams, strict: bool = True) -> Regime:
    """
    Regime of a parameter set.

    Args:
        params: Per-user weights
        strict: Reject parameter sets where more than one vector vanishes

    Returns:
        The regime; with `strict=False` ties resolve as
        no_network > no_quality > no_recommendation

    Raises:
        AmbiguousRegimeError: If `strict` and several vectors vanish
    """
    zero = {
        Regime.NO_NETWORK: vanishes(params.alpha),
        Regime.NO_QUALITY: vanishes(params.gamma),
        Regime.NO_RECOMMENDATION: vanishes(params.beta),
    }
    matches = [regime for regime, is_zero in zero.items() if is_zero]
    if strict and len(matches) > 1:
        raise AmbiguousRegimeError(
            "more than one weight vector vanishes",
            details={"regimes": [r.value for r in matches]},
        )
    return matches[0] if matches else Regime.GENERAL


def interaction_matrix(params: ModelParams, P: RowStochasticMatrix) -> np.ndarray:
    """The matrix AP."""
    return params.alpha[:, None] * P.entries


def _require_total_quality(q: QualityVector) -> None:
    if q.q_tot <= 0.0:
        raise HypothesisViolatedError(
            "total quality must be positive", hypothesis="positive_total_quality"
        )


def _require_no_network(params: ModelParams, q: QualityVector) -> None:
    if not vanishes(params.alpha):
        raise HypothesisViolatedError(
            "closed form needs alpha = 0 for every user", hypothesis="alpha_zero"
        )
    if float(np.mean(params.beta)) >= 1.0:
        raise HypothesisViolatedError(
            "closed form needs some beta_v < 1", hypothesis="beta_not_all_one"
        )
    _require_total_quality(q)


def no_network_limit(
    params: ModelParams, q: QualityVector
) -> Tuple[PopularityVector, AttentionState]:
    """
    Limits of popularity and attention when users ignore each other.

    Popularity converges to q / q_tot and user v settles at
    beta_v * pi* + (1 - beta_v) * q, from any initial condition.

    Raises:
        HypothesisViolatedError: If alpha is not zero, beta is identically
            one or the total quality vanishes
    """
    _require_no_network(params, q)
    pi_star = q.q / q.q_tot
    x_star = (
        params.beta[:, None] * pi_star[None, :]
        + (1.0 - params.beta)[:, None] * q.q[None, :]
    )
    return PopularityVector(pi=pi_star), AttentionState(x=x_star)


def no_network_rate(params: ModelParams, q: QualityVector) -> float:
    """
    Geometric contraction factor of popularity when users ignore each other.

    With mean recommendation weight b, the factor is b / (b + (1 - b) q_tot).
    """
    _require_no_network(params, q)
    beta_bar = float(np.mean(params.beta))
    return beta_bar / (beta_bar + (1.0 - beta_bar) * q.q_tot)


def _deficiency_mask(params: ModelParams, regime: Regime) -> np.ndarray:
    if regime is Regime.GENERAL:
        return params.gamma >= settings.zero_cutoff
    return params.alpha < 1.0 - settings.zero_cutoff


def z_limit(params: ModelParams, P: RowStochasticMatrix, q_tot: float) -> np.ndarray:
    """
    Limit z* of the aggregate attention.

    Without quality weights the limit is the all-ones vector. Otherwise it
    solves (I - AP) z = (B + q_tot (I - A - B)) 1.

    Raises:
        StabilityConditionUnmetError: If some node does not reach a
            deficient node, so AP need not be Schur stable
        SingularSystemError: If the linear solve fails its residual check
    """
    check_dimensions(params.n, 0, params, P)
    no_quality = vanishes(params.gamma)
    mask = _deficiency_mask(params, Regime.NO_QUALITY if no_quality else Regime.GENERAL)
    if not every_node_reaches(P, mask):
        raise StabilityConditionUnmetError(
            "not every node reaches a deficient node",
            details={"deficiency_set": [int(v) for v in np.flatnonzero(mask)]},
        )
    if no_quality:
        return np.ones(params.n)
    rhs = params.beta + q_tot * params.gamma
    system = np.eye(params.n) - interaction_matrix(params, P)
    return solve_checked(system, rhs, "z_limit")


def augmented_at(
    params: ModelParams, P: RowStochasticMatrix, z: AttentionTotals | np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Assemble U and c of the joint dynamics at the attention totals `z`.

    Returns:
        (U, c) with U = [[AP, B1], [1'AP / 1'z, 1'B1 / 1'z]] and
        c = [(I - A - B)1, 1'(I - A - B)1 / 1'z]

    Raises:
        ZeroTotalAttentionError: If 1'z is not positive
    """
    totals = z.z if isinstance(z, AttentionTotals) else np.asarray(z, dtype=float)
    if totals.shape != (params.n,):
        raise DimensionMismatchError(
            "totals and parameters disagree in size",
            details={"totals": list(totals.shape), "users": params.n},
        )
    return _augmented_arrays(interaction_matrix(params, P), params, float(totals.sum()))


def _augmented_arrays(
    AP: np.ndarray, params: ModelParams, denominator: float
) -> Tuple[np.ndarray, np.ndarray]:
    if denominator <= 0.0:
        raise ZeroTotalAttentionError("total attention 1'z must be positive")
    n = params.n
    U = np.empty((n + 1, n + 1))
    U[:n, :n] = AP
    U[:n, n] = params.beta
    U[n, :n] = AP.sum(axis=0) / denominator
    U[n, n] = params.beta.sum() / denominator
    c = np.append(params.gamma, params.gamma.sum() / denominator)
    return U, c


def augmented_limit(
    params: ModelParams, P: RowStochasticMatrix, q_tot: float
) -> AugmentedSystem:
    """
    Limit matrices U~, c~ assembled at z*, with the spectral data of the system.

    Raises:
        StabilityConditionUnmetError: Propagated from z_limit
        SingularSystemError: Propagated from z_limit
    """
    z_star = z_limit(params, P, q_tot)
    U_tilde, c_tilde = augmented_at(params, P, z_star)
    return AugmentedSystem(
        U_tilde=U_tilde,
        c_tilde=c_tilde,
        z_star=z_star,
        lambda1=spectral_radius(interaction_matrix(params, P)),
        lambda2=subdominant_magnitude(U_tilde),
    )


def general_fixed_point(sys: AugmentedSystem, q: QualityVector, i: int) -> np.ndarray:
    """
    Limit q_i (I - U~)^-1 c~ of the joint state of influencer `i`.

    Raises:
        IndexOutOfRangeError: If `i` is not an influencer index
        SingularSystemError: If I - U~ is singular, which happens exactly
            when U~ is row stochastic (no quality weights)
    """
    if not 0 <= i < q.m:
        raise IndexOutOfRangeError(
            f"influencer {i} is outside 0..{q.m - 1}", details={"influencer": i}
        )
    if np.all(np.abs(sys.row_sums() - 1.0) <= settings.row_sum_tol):
        raise SingularSystemError(
            "U~ is row stochastic, so I - U~ is singular; use the consensus functional"
        )
    size = sys.n + 1
    return solve_checked(
        np.eye(size) - sys.U_tilde, q.q[i] * sys.c_tilde, "general_fixed_point"
    )


def fj_decoupled_fixed_point(
    params: ModelParams, P: RowStochasticMatrix, q: QualityVector, i: int
) -> np.ndarray:
    """
    Equilibrium q_i 1 of the Friedkin-Johnsen dynamics without recommendations.

    The closed form is cross-checked against the solve of
    (I - AP) x = (I - A) q_i 1.

    Raises:
        HypothesisViolatedError: If some beta_v is nonzero
        StabilityConditionUnmetError: If some node does not reach a node
            with alpha_w < 1
    """
    if not 0 <= i < q.m:
        raise IndexOutOfRangeError(
            f"influencer {i} is outside 0..{q.m - 1}", details={"influencer": i}
        )
    if not vanishes(params.beta):
        raise HypothesisViolatedError(
            "decoupled equilibrium needs beta = 0 for every user",
            hypothesis="beta_zero",
        )
    mask = _deficiency_mask(params, Regime.NO_RECOMMENDATION)
    if not every_node_reaches(P, mask):
        raise StabilityConditionUnmetError(
            "not every node reaches a node with alpha_w < 1",
            details={"deficiency_set": [int(v) for v in np.flatnonzero(mask)]},
        )
    closed_form = np.full(params.n, q.q[i])
    solved = solve_checked(
        np.eye(params.n) - interaction_matrix(params, P),
        (1.0 - params.alpha) * q.q[i],
        "fj_decoupled_fixed_point",
    )
    gap = float(np.max(np.abs(solved - closed_form)))
    if gap > settings.residual_tol:
        raise SingularSystemError(
            "linear solve disagrees with the closed form", details={"gap": gap}
        )
    return closed_form


def aperiodic_targets(
    params: ModelParams, P: RowStochasticMatrix, regime: Regime
) -> NodeSet:
    """Deficient nodes of `regime` that are aperiodic."""
    mask = _deficiency_mask(params, regime)
    members = frozenset(
        int(v) for v in np.flatnonzero(mask) if is_aperiodic_node(P, int(v))
    )
    return NodeSet(n=P.n, members=members)


def _every_node_reaches_set(P: RowStochasticMatrix, targets: NodeSet) -> bool:
    return bool(targets.members) and reaching_set(P, targets).is_everyone()


def consensus_functional(
    params: ModelParams,
    P: RowStochasticMatrix,
    z0: AttentionTotals | np.ndarray | None = None,
    horizon: Optional[int] = None,
    tol: Optional[float] = None,
    require_unit_bound: bool = True,
) -> np.ndarray:
    """
    Left factor phi of the rank-one limit of U(t-1) ... U(0) without quality.

    The product is accumulated along the trajectory of the totals started at
    `z0` until its rows agree. The matrix mapping s(t) to s(t+1) uses the
    totals at t+1. The returned row satisfies phi' (z(0), 1) = 1; it sums to
    1 when z(0) is the all-ones vector.

    Args:
        params: Weights with gamma = 0
        P: Influence matrix
        z0: Initial attention totals (all ones when omitted)
        horizon: Largest number of factors (settings default)
        tol: Largest accepted sum over columns of the row spread
        require_unit_bound: Reject z(0) with components below 1

    Raises:
        HypothesisViolatedError: If gamma is not zero, the aperiodic
            reachability condition fails or z(0) >= 1 is required and fails
        NoConvergenceError: If the rows still disagree at the horizon
    """
    check_dimensions(params.n, 0, params, P)
    horizon = settings.consensus_horizon if horizon is None else horizon
    tol = settings.consensus_tol if tol is None else tol

    if not vanishes(params.gamma):
        raise HypothesisViolatedError(
            "consensus functional needs gamma = 0 for every user",
            hypothesis="gamma_zero",
        )
    if not _every_node_reaches_set(P, aperiodic_targets(params, P, Regime.NO_QUALITY)):
        raise HypothesisViolatedError(
            "not every node reaches an aperiodic node with alpha_w < 1",
            hypothesis="aperiodic_deficient_reachable",
        )

    if z0 is None:
        z = np.ones(params.n)
    else:
        z = np.array(z0.z if isinstance(z0, AttentionTotals) else z0, dtype=float)
    if require_unit_bound and np.any(z < 1.0 - UNIT_BOUND_SLACK):
        raise HypothesisViolatedError(
            "initial totals must satisfy z(0) >= 1", hypothesis="unit_lower_bound"
        )

    AP = interaction_matrix(params, P)
    product = np.eye(params.n + 1)
    spread = np.inf
    started = time.perf_counter()
    for t in range(1, horizon + 1):
        z = totals_step_array(
            z, params.alpha, params.beta, params.gamma, P.entries, 0.0
        )
        U, _ = _augmented_arrays(AP, params, float(z.sum()))
        product = U @ product
        spread = float(np.sum(product.max(axis=0) - product.min(axis=0)))
        if spread <= tol:
            log_solver(
                logger,
                "consensus_product",
                t,
                residual=spread,
                duration_ms=(time.perf_counter() - started) * 1000,
            )
            return product.mean(axis=0)

    log_solver(logger, "consensus_product", horizon, residual=spread, converged=False)
    raise NoConvergenceError(
        "rows of the accumulated product did not agree within the horizon",
        details={"horizon": horizon, "spread": spread},
    )


def consensus_values(phi: np.ndarray, state: AttentionState) -> np.ndarray:
    """Consensus value phi' s_i(0) of every influencer."""
    return np.array([float(phi @ augmented_state(state, i)) for i in range(state.m)])


def schur_certificate(
    params: ModelParams,
    P: RowStochasticMatrix,
    regime: Regime,
    q: Optional[QualityVector] = None,
    z0: Optional[AttentionTotals] = None,
) -> SchurCertificate:
    """
    Check the hypotheses of the convergence result that governs `regime`.

    Flags that depend on q or z(0) are left unset when those are not given.
    The certificate never raises for unmet hypotheses.
    """
    check_dimensions(params.n, 0, params, P)
    mask = _deficiency_mask(params, regime)
    deficiency = [int(v) for v in np.flatnonzero(mask)]
    reaches = every_node_reaches(P, mask)
    aperiodic_reach = _every_node_reaches_set(P, aperiodic_targets(params, P, regime))
    lambda1 = spectral_radius(interaction_matrix(params, P))
    q_ok = None if q is None else q.q_tot >= 1.0
    z0_ok = None if z0 is None else z0.at_least_one(UNIT_BOUND_SLACK)

    hypotheses: dict[str, bool] = {}
    if regime is Regime.NO_NETWORK:
        hypotheses["alpha_zero"] = vanishes(params.alpha)
        hypotheses["beta_not_all_one"] = float(np.mean(params.beta)) < 1.0
        if q is not None:
            hypotheses["positive_total_quality"] = q.q_tot > 0.0
    elif regime is Regime.NO_QUALITY:
        hypotheses["gamma_zero"] = vanishes(params.gamma)
        hypotheses["aperiodic_deficient_reachable"] = aperiodic_reach
        if z0_ok is not None:
            hypotheses["unit_lower_bound"] = z0_ok
    elif regime is Regime.NO_RECOMMENDATION:
        hypotheses["beta_zero"] = vanishes(params.beta)
        hypotheses["deficient_reachable"] = reaches
    else:
        hypotheses["aperiodic_deficient_reachable"] = aperiodic_reach
        if q_ok is not None:
            hypotheses["total_quality_at_least_one"] = q_ok
        if z0_ok is not None:
            hypotheses["unit_lower_bound"] = z0_ok

    certificate = SchurCertificate(
        regime=regime,
        deficiency_set=deficiency,
        every_node_reaches=reaches,
        aperiodic_deficient_reachable=aperiodic_reach,
        lambda1=lambda1,
        q_tot_at_least_one=q_ok,
        z0_at_least_one=z0_ok,
        hypotheses=hypotheses,
    )
    logger.debug(
        "schur_certificate",
        regime=regime.value,
        hypotheses_hold=certificate.hypotheses_hold,
        unmet=certificate.unmet(),
    )
    return certificate
