"""Spectral analysis: Perron roots, stationary vectors and power decay."""

import time
from typing import List, Tuple

import numpy as np
from scipy import linalg

from src.config import settings
from src.models.errors import (
    DomainError,
    MatrixOverflowError,
    NoConvergenceError,
    NotUniqueError,
)
from src.models.graph import RowStochasticMatrix
from src.utils.logging import get_logger, log_solver

logger = get_logger(__name__)

# Eigenvalues closer than this to 1 count as a unit eigenvalue
_UNIT_EIGENVALUE_TOL = 1e-9

# Fixed seed for the positive start vector, so results are reproducible
_START_SEED = 0x5EED

# Power iteration gives up when the residual fails to halve over this many steps
_STALL_WINDOW = 1000
_STALL_FACTOR = 0.5

PowerDecay = List[Tuple[int, float]]


def _as_square(matrix: np.ndarray) -> np.ndarray:
    array = np.asarray(matrix, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise DomainError("matrix has non-finite entries")
    return array


def _dense_spectral_radius(matrix: np.ndarray) -> float:
    try:
        eigenvalues = linalg.eigvals(matrix)
    except linalg.LinAlgError as exc:
        raise NoConvergenceError(
            "dense eigensolver did not converge", details={"reason": str(exc)}
        ) from exc
    return float(np.max(np.abs(eigenvalues)))


def _perron_root(matrix: np.ndarray) -> float | None:
    """
    Power iteration for a nonnegative matrix.

    Stops once the eigen-residual ||M x - rho x||_1 / rho drops below the
    configured tolerance. Returns None when the residual stalls or the
    iteration budget runs out, which happens for periodic spectra and for
    nearly tied dominant eigenvalues.
    """
    n = matrix.shape[0]
    rng = np.random.default_rng(_START_SEED)
    x = rng.uniform(0.5, 1.5, size=n)
    x /= np.sum(x)
    started = time.perf_counter()
    checkpoint = np.inf
    residual = np.inf
    iteration = 0

    for iteration in range(1, settings.power_iteration_max_iter + 1):
        y = matrix @ x
        norm = float(np.sum(y))  # x > 0 and M >= 0, so this is the l1 norm
        if norm == 0.0:
            log_solver(logger, "power_iteration", iteration, residual=0.0)
            return 0.0
        # sum(x) == 1, so the l1 quotient is the norm of M x
        estimate = norm
        residual = float(np.sum(np.abs(y - estimate * x))) / estimate
        if residual <= settings.power_iteration_rtol:
            log_solver(
                logger,
                "power_iteration",
                iteration,
                residual=residual,
                duration_ms=(time.perf_counter() - started) * 1000,
            )
            return estimate
        x = y / norm
        if iteration % _STALL_WINDOW == 0:
            if residual > _STALL_FACTOR * checkpoint:
                break
            checkpoint = residual

    log_solver(
        logger,
        "power_iteration",
        iteration,
        residual=residual,
        converged=False,
    )
    return None


def spectral_radius(matrix: np.ndarray) -> float:
    """
    Spectral radius max |eigenvalue| of a square matrix.

    Nonnegative matrices go through power iteration, since their Perron root
    is the dominant eigenvalue. Matrices with negative entries, and
    nonnegative ones whose iteration does not settle, fall back to the dense
    Hessenberg-QR eigensolver.

    Args:
        matrix: Square finite matrix

    Returns:
        The spectral radius

    Raises:
        NoConvergenceError: If the dense fallback also fails
    """
    array = _as_square(matrix)
    if array.size == 0:
        return 0.0
    if np.all(array >= 0.0):
        root = _perron_root(array)
        if root is not None:
            return root
        logger.info("power_iteration_fallback", n=array.shape[0])
    return _dense_spectral_radius(array)


def subdominant_magnitude(matrix: np.ndarray) -> float:
    """
    Largest eigenvalue magnitude after removing one dominant eigenvalue.

    Ties are broken by magnitude only, so a second eigenvalue of the same
    modulus (e.g. -1 for a periodic chain) is returned as is.
    """
    array = _as_square(matrix)
    if array.shape[0] < 2:
        return 0.0
    magnitudes = np.sort(np.abs(linalg.eigvals(array)))[::-1]
    return float(magnitudes[1])


def stationary_distribution(matrix: RowStochasticMatrix | np.ndarray) -> np.ndarray:
    """
    Left Perron vector of a row-stochastic matrix, normalized to sum 1.

    Args:
        matrix: Row-stochastic matrix with a simple unit eigenvalue

    Returns:
        phi >= 0 with phi^T M = phi^T and sum(phi) = 1

    Raises:
        NotUniqueError: If the eigenvalue 1 is not simple
        NoConvergenceError: If the residual cannot be brought below tolerance
    """
    array = _as_square(
        matrix.entries if isinstance(matrix, RowStochasticMatrix) else matrix
    )
    eigenvalues, vectors = linalg.eig(array.T)
    unit = np.flatnonzero(np.abs(eigenvalues - 1.0) < _UNIT_EIGENVALUE_TOL)
    if unit.size != 1:
        raise NotUniqueError(
            "eigenvalue 1 is not simple; the stationary distribution is not unique",
            details={"multiplicity": int(unit.size)},
        )

    phi = np.real(vectors[:, unit[0]])
    phi = phi / np.sum(phi)
    phi = np.clip(phi, 0.0, None)
    phi /= np.sum(phi)

    # Polish with a few left multiplications if the eigensolver left residue
    residual = float(np.sum(np.abs(phi @ array - phi)))
    iterations = 0
    max_iter = settings.power_iteration_max_iter
    while residual > settings.residual_tol and iterations < max_iter:
        phi = phi @ array
        phi /= np.sum(phi)
        residual = float(np.sum(np.abs(phi @ array - phi)))
        iterations += 1
    if residual > settings.residual_tol:
        raise NoConvergenceError(
            "stationary distribution residual did not fall below tolerance",
            details={"residual": residual},
        )
    log_solver(logger, "stationary_distribution", iterations, residual=residual)
    return phi


def power_norm_decay(matrix: np.ndarray, k_max: int) -> PowerDecay:
    """
    Exact infinity norms of the first k_max powers of a Schur-stable matrix.

    Args:
        matrix: Square matrix with spectral radius < 1
        k_max: Number of powers

    Returns:
        List of (k, ||M^k||_inf) for k = 1..k_max

    Raises:
        DomainError: If k_max < 1 or the matrix is not Schur stable
        MatrixOverflowError: If the powers leave the floating-point range
    """
    array = _as_square(matrix)
    if k_max < 1:
        raise DomainError("k_max must be positive")
    rho = spectral_radius(array)
    if rho >= 1.0:
        raise DomainError(
            f"power decay needs a Schur-stable matrix, spectral radius is {rho:.6g}"
        )

    decay: PowerDecay = []
    power = np.eye(array.shape[0])
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, k_max + 1):
            power = power @ array
            norm = float(np.linalg.norm(power, ord=np.inf))
            if not np.isfinite(norm):
                raise MatrixOverflowError(
                    "matrix powers overflowed before decay set in",
                    details={"k_reached": k - 1},
                )
            decay.append((k, norm))
    return decay


def decay_slope(decay: PowerDecay) -> float:
    """
    Least-squares slope of log ||M^k|| over the second half of the powers.

    The slope estimates log rho(M). Zero norms (nilpotent tails) are skipped.
    """
    k_max = decay[-1][0]
    tail = [(k, norm) for k, norm in decay if k >= k_max / 2 and norm > 0.0]
    if len(tail) < 2:
        raise DomainError("not enough nonzero norms to estimate a slope")
    ks = np.array([k for k, _ in tail], dtype=float)
    logs = np.log(np.array([norm for _, norm in tail]))
    slope, _ = np.polyfit(ks, logs, 1)
    return float(slope)


def decay_envelope(decay: PowerDecay, rho: float, n: int) -> np.ndarray:
    """Normalized envelope ||M^k|| rho^-k k^-n, computed in log space."""
    if not 0.0 < rho < 1.0:
        raise DomainError("envelope needs a spectral radius in (0, 1)")
    ks = np.array([k for k, _ in decay], dtype=float)
    norms = np.array([norm for _, norm in decay])
    with np.errstate(divide="ignore"):
        log_envelope = np.log(norms) - ks * np.log(rho) - n * np.log(ks)
    return np.exp(log_envelope)
