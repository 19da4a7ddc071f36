"""Dense linear solves with residual checks."""

import warnings

import numpy as np
from scipy.linalg import LinAlgError, LinAlgWarning, lu_factor, lu_solve

from src.config import settings
from src.models.errors import SingularSystemError
from src.utils.logging import get_logger

logger = get_logger(__name__)


def solve_checked(
    matrix: np.ndarray, rhs: np.ndarray, context: str, residual_tol: float | None = None
) -> np.ndarray:
    """
    Solve `matrix @ x = rhs` by LU with partial pivoting.

    Args:
        matrix: Square coefficient matrix
        rhs: Right-hand side vector
        context: Name of the system, used in errors and logs
        residual_tol: Largest accepted max-norm residual (settings default)

    Returns:
        The solution vector

    Raises:
        SingularSystemError: If the factorization breaks down or the
            residual exceeds the tolerance
    """
    tol = settings.residual_tol if residual_tol is None else residual_tol
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            factors = lu_factor(matrix, check_finite=True)
        except (LinAlgError, LinAlgWarning, ValueError) as exc:
            raise SingularSystemError(
                f"{context}: matrix is singular", details={"reason": str(exc)}
            ) from exc

    pivots = np.abs(np.diag(factors[0]))
    threshold = pivots.size * np.finfo(float).eps * max(pivots.max(initial=0.0), 1.0)
    if pivots.size and pivots.min() <= threshold:
        raise SingularSystemError(
            f"{context}: matrix is numerically singular",
            details={"smallest_pivot": float(pivots.min())},
        )

    solution = lu_solve(factors, rhs)
    residual = float(np.max(np.abs(matrix @ solution - rhs))) if rhs.size else 0.0
    if not np.isfinite(residual) or residual > tol:
        raise SingularSystemError(
            f"{context}: residual {residual:.3e} exceeds {tol:.1e}",
            details={"residual": residual},
        )
    logger.debug("linear_solve", system=context, residual=residual)
    return solution
