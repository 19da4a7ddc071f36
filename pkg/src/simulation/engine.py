"""Trajectory simulation and convergence detection."""

import time
from typing import List, Optional

import numpy as np

from src.config import settings
from src.models.errors import TooShortError
from src.models.simulation import ConvergenceReport, Scenario, Trajectory
from src.models.state import AttentionState, AttentionTotals, PopularityVector
from src.numerics.dynamics import popularity_array, step_array
from src.utils.logging import get_logger

logger = get_logger(__name__)


def simulate(sc: Scenario) -> Trajectory:
    """
    Iterate the update law from x0 for `sc.horizon` steps.

    States are recorded at t = 0, every `record_every` steps and at the
    horizon. The run is deterministic for a fixed scenario.

    Args:
        sc: Scenario to run

    Returns:
        Trajectory of recorded states, popularity and totals

    Raises:
        ZeroTotalAttentionError: If popularity becomes undefined, with the
            offending time in its details
    """
    alpha, beta, gamma = sc.params.alpha, sc.params.beta, sc.params.gamma
    P, q = sc.P.entries, sc.q.q
    x = np.array(sc.x0.x)

    times: List[int] = []
    states: List[AttentionState] = []
    popularity: List[PopularityVector] = []
    totals: List[AttentionTotals] = []

    def record(t: int) -> None:
        times.append(t)
        states.append(AttentionState(x=x, t=t))
        popularity.append(PopularityVector(pi=popularity_array(x, t)))
        totals.append(AttentionTotals(z=x.sum(axis=1)))

    started = time.perf_counter()
    record(0)
    for t in range(sc.horizon):
        x = step_array(x, alpha, beta, gamma, P, q, t)
        if (t + 1) % sc.record_every == 0 or t + 1 == sc.horizon:
            record(t + 1)

    logger.info(
        "simulation_finished",
        users=sc.n,
        influencers=sc.m,
        steps=sc.horizon,
        records=len(times),
        duration_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return Trajectory(times=times, states=states, popularity=popularity, totals=totals)


def consensus_gap(state: AttentionState) -> np.ndarray:
    """Spread max_v x_v - min_v x_v of the attention to each influencer."""
    return state.x.max(axis=0) - state.x.min(axis=0)


def successive_differences(traj: Trajectory) -> np.ndarray:
    """Max-norm change between consecutive records."""
    stacked = traj.stacked_states()
    if len(stacked) < 2:
        return np.empty(0)
    return np.abs(np.diff(stacked, axis=0)).max(axis=(1, 2))


def estimate_rate(times: np.ndarray, differences: np.ndarray) -> Optional[float]:
    """
    Geometric rate from a log-linear fit of the differences against time.

    Only differences inside the configured band enter the fit; None when
    fewer than the configured number of points remain.
    """
    low, high = settings.rate_band_low, settings.rate_band_high
    mask = (differences > low) & (differences < high)
    if int(mask.sum()) < settings.rate_min_points:
        return None
    slope, _ = np.polyfit(times[mask].astype(float), np.log(differences[mask]), 1)
    return float(np.exp(slope))


def detect_convergence(
    traj: Trajectory, tol: Optional[float] = None, window: Optional[int] = None
) -> ConvergenceReport:
    """
    Decide whether a trajectory has settled.

    The run counts as converged when each of the last `window` successive
    differences is at most `tol`. `t_converged` is the first recorded time at
    which `window` consecutive differences had stayed within `tol`, counted
    from the start of the final such run.

    Raises:
        TooShortError: If fewer than window + 1 states were recorded
    """
    tol = settings.convergence_tol if tol is None else tol
    window = settings.convergence_window if window is None else window
    if len(traj) < window + 1:
        raise TooShortError(
            f"need at least {window + 1} records, got {len(traj)}",
            details={"records": len(traj), "window": window},
        )

    differences = successive_differences(traj)
    times = np.asarray(traj.times)
    within = differences <= tol
    converged = bool(np.all(within[-window:]))

    t_converged = None
    if converged:
        outside = np.flatnonzero(~within)
        run_start = int(outside[-1]) + 1 if outside.size else 0
        t_converged = int(times[run_start + window])

    terminal = traj.terminal
    return ConvergenceReport(
        converged=converged,
        t_converged=t_converged,
        terminal_state=terminal,
        terminal_popularity=traj.popularity[-1],
        estimated_rate=estimate_rate(times[1:], differences),
        final_difference=float(differences[-1]),
        consensus_gap=consensus_gap(terminal).tolist(),
    )


def effective_window(traj: Trajectory, window: Optional[int] = None) -> int:
    """The convergence window, shortened to fit trajectories with few records."""
    window = settings.convergence_window if window is None else window
    return max(1, min(window, len(traj) - 1))
