"""Handler for the series command."""

from src.models.errors import ExitCode
from src.numerics.series import partial_sum, power_series_sum, series_polynomial
from src.utils.formatters import format_series_result, print_result


def cmd_series(n: int, lam: float) -> int:
    """
    Print the closed form of sum_k k^n lam^k next to a brute-force partial sum.

    Raises:
        DomainError: If lam is outside (0, 1) or n is outside 0..20
    """
    value = power_series_sum(n, lam)
    coefficients = series_polynomial(n).coefficients if n >= 1 else []
    print_result(format_series_result(n, lam, value, coefficients, partial_sum(n, lam)))
    return ExitCode.OK
