"""Runtime checks on the time-varying augmented matrices."""

from typing import List, Optional

import numpy as np

from src.models.errors import NotUniqueError
from src.models.graph import RowStochasticMatrix
from src.models.state import AttentionTotals, ModelParams
from src.numerics.dynamics import totals_step_array
from src.numerics.equilibria import augmented_at, augmented_limit
from src.numerics.spectral import spectral_radius, stationary_distribution
from src.utils.logging import get_logger

logger = get_logger(__name__)


def augmented_sequence(
    params: ModelParams,
    P: RowStochasticMatrix,
    q_tot: float,
    z0: AttentionTotals | np.ndarray,
    steps: int,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """
    U(t), c(t) for t = 0..steps-1 along the totals trajectory from z0.

    U(t) maps the joint state at t to the one at t + 1, so it is assembled
    with the totals at t + 1.
    """
    z = np.array(z0.z if isinstance(z0, AttentionTotals) else z0, dtype=float)
    Us: list[np.ndarray] = []
    cs: list[np.ndarray] = []
    for _ in range(steps):
        z = totals_step_array(
            z, params.alpha, params.beta, params.gamma, P.entries, q_tot
        )
        U, c = augmented_at(params, P, z)
        Us.append(U)
        cs.append(c)
    return Us, cs


def augmented_norm_profile(
    params: ModelParams,
    P: RowStochasticMatrix,
    z0: AttentionTotals | np.ndarray,
    steps: int,
    q_tot: float = 0.0,
) -> List[float]:
    """Infinity norms of U(t); identically 1 without quality weights when z(0) >= 1."""
    Us, _ = augmented_sequence(params, P, q_tot, z0, steps)
    return [float(np.linalg.norm(U, ord=np.inf)) for U in Us]


def augmented_stability_profile(
    params: ModelParams,
    P: RowStochasticMatrix,
    z0: AttentionTotals | np.ndarray,
    steps: int,
    q_tot: float,
) -> List[float]:
    """Spectral radii of U(t) along the totals trajectory."""
    Us, _ = augmented_sequence(params, P, q_tot, z0, steps)
    return [spectral_radius(U) for U in Us]


def _product(Us: list[np.ndarray], first: int, last: int) -> np.ndarray:
    """U(last) ... U(first); the identity when first > last."""
    result = np.eye(Us[0].shape[0])
    for s in range(first, last + 1):
        result = Us[s] @ result
    return result


def decomposition_residual(
    params: ModelParams,
    P: RowStochasticMatrix,
    q_tot: float,
    z0: AttentionTotals | np.ndarray,
    t: int,
) -> float:
    """
    Max-norm gap between the forced response and its expansion around U~, c~.

    The forced response sum_k U(t) ... U(k+1) c(k) is compared with
    sum_k U~^(t-k) (c~ + dc(k)) plus the correction terms
    sum_k sum_l U~^l dU(t-l) U(t-l-1) ... U(k+1) c(k).
    """
    system = augmented_limit(params, P, q_tot)
    Us, cs = augmented_sequence(params, P, q_tot, z0, t + 1)
    U_tilde, c_tilde = system.U_tilde, system.c_tilde
    powers = [np.eye(U_tilde.shape[0])]
    for _ in range(t + 1):
        powers.append(U_tilde @ powers[-1])

    direct = sum(_product(Us, k + 1, t) @ cs[k] for k in range(t + 1))
    expanded = np.zeros_like(c_tilde)
    for k in range(t + 1):
        expanded += powers[t - k] @ cs[k]  # c~ + dc(k) = c(k)
        for ell in range(t - k):
            dU = Us[t - ell] - U_tilde
            expanded += powers[ell] @ dU @ _product(Us, k + 1, t - ell - 1) @ cs[k]
    return float(np.max(np.abs(direct - expanded)))


def invariant_measure_gap(phi: np.ndarray, P: RowStochasticMatrix) -> Optional[float]:
    """
    l1 distance between the normalized user block of phi and the stationary
    distribution of P, or None when the latter is not unique.
    """
    users = np.asarray(phi[: P.n], dtype=float)
    mass = float(users.sum())
    if mass <= 0.0:
        return None
    try:
        measure = stationary_distribution(P)
    except NotUniqueError:
        logger.debug("invariant_measure_not_unique", n=P.n)
        return None
    return float(np.sum(np.abs(users / mass - measure)))
