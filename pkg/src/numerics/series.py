"""Closed form of the power series sum_k k^n lam^k and the phi distance bound."""

from functools import lru_cache

from numpy.polynomial import Polynomial

from src.constants import SERIES_MAX_ORDER
from src.models.equilibria import DistanceBound, SeriesPolynomial
from src.models.errors import DomainError


@lru_cache(maxsize=64)
def _numerator(n: int) -> Polynomial:
    # p_0 = 1; p_{k-1} = (p_{k-2} + lam p'_{k-2})(1 - lam) + k lam p_{k-2}
    p = Polynomial([1.0])
    lam = Polynomial([0.0, 1.0])
    for k in range(2, n + 1):
        p = ((p + lam * p.deriv()) * (1.0 - lam) + k * lam * p).trim()
    return p


def series_polynomial(n: int) -> SeriesPolynomial:
    """
    Numerator polynomial p with sum_k k^n lam^k = lam p(lam) / (1 - lam)^(n+1).

    The polynomial has degree n - 1 and p(0) = 1; n = 1 gives p = 1 and
    n = 2 gives p = 1 + lam. The bound on ||phi - phi_tilde||_1 for n users
    uses `series_polynomial(n + 1)`, the degree-n member of the family.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError("series polynomial needs n >= 1", details={"n": n})
    coefficients = [float(c) for c in _numerator(n).coef]
    return SeriesPolynomial(degree=len(coefficients) - 1, coefficients=coefficients)


def power_series_sum(n: int, lam: float) -> float:
    """
    Evaluate sum_{k>=0} k^n lam^k in closed form.

    Args:
        n: Exponent, 0 <= n <= 20
        lam: Ratio in (0, 1)

    Returns:
        The series value; n = 0 is the geometric series 1 / (1 - lam)

    Raises:
        DomainError: If lam is outside (0, 1) or n is outside 0..20
    """
    if not 0.0 < lam < 1.0:
        raise DomainError(
            "lambda must lie in the open interval (0, 1)", details={"lam": lam}
        )
    if not 0 <= n <= SERIES_MAX_ORDER:
        raise DomainError(
            f"exponent must lie in 0..{SERIES_MAX_ORDER}", details={"n": n}
        )
    if n == 0:
        return 1.0 / (1.0 - lam)
    return lam * series_polynomial(n)(lam) / (1.0 - lam) ** (n + 1)


def partial_sum(
    n: int, lam: float, floor: float = 1e-16, max_terms: int = 1_000_000
) -> float:
    """Brute-force sum of k^n lam^k, stopped once past-peak terms drop below `floor`."""
    total = 1.0 if n == 0 else 0.0
    peak_passed = False
    previous = 0.0
    for k in range(1, max_terms):
        term = k**n * lam**k
        total += term
        peak_passed = peak_passed or term < previous
        if peak_passed and term < floor * total:
            break
        previous = term
    return total


def phi_distance_bound(lambda1: float, n: int, z0_deviation: float) -> DistanceBound:
    """
    Bound on ||phi - phi_tilde||_1 with the unknown constant set to 1.

    The value is ||z(0) - 1||_1 lam1 p_n(lam1) / (1 - lam1)^(n+1). Only its
    dependence on lam1 and z(0) is meaningful.

    Raises:
        DomainError: If lambda1 is outside [0, 1), n < 1 or the deviation
            is negative
    """
    if not 0.0 <= lambda1 < 1.0:
        raise DomainError(
            "lambda1 must lie in [0, 1)", details={"lambda1": lambda1}
        )
    if n < 1:
        raise DomainError("number of users must be positive", details={"n": n})
    if z0_deviation < 0.0:
        raise DomainError(
            "deviation must be nonnegative", details={"z0_deviation": z0_deviation}
        )
    value = (
        z0_deviation
        * lambda1
        * series_polynomial(n + 1)(lambda1)
        / (1.0 - lambda1) ** (n + 1)
    )
    return DistanceBound(value=value, lambda1=lambda1, n=n, z0_deviation=z0_deviation)
