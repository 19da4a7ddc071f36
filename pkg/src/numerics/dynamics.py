"""The attention update law, popularity index and aggregate-attention recursion."""

from typing import Optional

import numpy as np

from src.models.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    ZeroTotalAttentionError,
)
from src.models.graph import RowStochasticMatrix
from src.models.state import (
    AttentionState,
    AttentionTotals,
    ModelParams,
    PopularityVector,
    QualityVector,
)


def check_dimensions(
    n: int,
    m: int,
    params: ModelParams,
    P: RowStochasticMatrix,
    q: Optional[QualityVector] = None,
) -> None:
    """
    Ensure users and influencers agree across the model inputs.

    Raises:
        DimensionMismatchError: On the first disagreement found
    """
    sizes = {"state_users": n, "params_users": params.n, "matrix_users": P.n}
    if len(set(sizes.values())) != 1:
        raise DimensionMismatchError("user counts disagree", details=sizes)
    if q is not None and q.m != m:
        raise DimensionMismatchError(
            "influencer counts disagree",
            details={"state_influencers": m, "quality_influencers": q.m},
        )


def popularity_array(x: np.ndarray, t: Optional[int] = None) -> np.ndarray:
    """Column sums of `x` divided by the total attention."""
    column_sums = x.sum(axis=0)
    total = float(column_sums.sum())
    if total <= 0.0:
        raise ZeroTotalAttentionError(t=t)
    return column_sums / total


def step_array(
    x: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    gamma: np.ndarray,
    P: np.ndarray,
    q: np.ndarray,
    t: Optional[int] = None,
) -> np.ndarray:
    """
    One synchronous update on raw arrays.

    Popularity is read from `x` before any column is updated.
    """
    pi = popularity_array(x, t)
    nxt = (
        alpha[:, None] * (P @ x)
        + beta[:, None] * pi[None, :]
        + gamma[:, None] * q[None, :]
    )
    # Convex combinations of [0, 1] values; only rounding can leave the box
    return np.clip(nxt, 0.0, 1.0, out=nxt)


def popularity(state: AttentionState) -> PopularityVector:
    """
    Share of total attention received by each influencer.

    Args:
        state: Attention state

    Returns:
        PopularityVector on the simplex

    Raises:
        ZeroTotalAttentionError: If every attention value is zero
    """
    return PopularityVector(pi=popularity_array(state.x, state.t))


def step(
    state: AttentionState,
    params: ModelParams,
    P: RowStochasticMatrix,
    q: QualityVector,
) -> AttentionState:
    """
    Advance the attention state by one time step.

    Every user mixes the attention of its neighbours (weight alpha), the
    current popularity (weight beta) and the influencer quality (weight
    gamma).

    Args:
        state: State at time t
        params: Per-user weights
        P: Influence matrix
        q: Influencer quality

    Returns:
        AttentionState at time t + 1

    Raises:
        DimensionMismatchError: If the inputs disagree in size
        ZeroTotalAttentionError: If popularity is undefined at time t
    """
    check_dimensions(state.n, state.m, params, P, q)
    x = step_array(
        state.x, params.alpha, params.beta, params.gamma, P.entries, q.q, state.t
    )
    return AttentionState(x=x, t=state.t + 1)


def totals(state: AttentionState) -> AttentionTotals:
    """Total attention z_v of every user."""
    return AttentionTotals(z=state.x.sum(axis=1))


def totals_step_array(
    z: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    gamma: np.ndarray,
    P: np.ndarray,
    q_tot: float,
) -> np.ndarray:
    return alpha * (P @ z) + beta + q_tot * gamma


def totals_step(
    z: AttentionTotals,
    params: ModelParams,
    P: RowStochasticMatrix,
    q_tot: float,
) -> AttentionTotals:
    """
    Advance the aggregate attention: z' = AP z + B 1 + q_tot (I - A - B) 1.

    Raises:
        DimensionMismatchError: If the inputs disagree in size
    """
    check_dimensions(z.n, 0, params, P)
    # I - A - B is Gamma up to rounding; the stored gamma is used as is
    nxt = totals_step_array(
        z.z, params.alpha, params.beta, params.gamma, P.entries, q_tot
    )
    return AttentionTotals(z=np.clip(nxt, 0.0, None))


def augmented_state(state: AttentionState, i: int) -> np.ndarray:
    """
    The column of influencer `i` followed by its popularity.

    Raises:
        IndexOutOfRangeError: If `i` is not an influencer index
        ZeroTotalAttentionError: If popularity is undefined
    """
    if not 0 <= i < state.m:
        raise IndexOutOfRangeError(
            f"influencer {i} is outside 0..{state.m - 1}", details={"influencer": i}
        )
    pi = popularity_array(state.x, state.t)
    return np.append(state.x[:, i], pi[i])
