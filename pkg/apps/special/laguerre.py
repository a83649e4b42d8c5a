"""
Generalized Laguerre polynomials and log-factorials.
"""
import math
from dataclasses import dataclass

from scipy.special import gammaln

from config.exceptions import EngineError


@dataclass(frozen=True)
class LaguerreQuery:
    """Degree n, integer order alpha and argument x of L_n^alpha(x)."""
    n: int
    alpha: int
    x: float

    def __post_init__(self):
        if self.n < 0:
            raise EngineError(f'Laguerre degree must be nonnegative, got {self.n}', code='invalid_argument')
        if self.x < 0:
            raise EngineError(f'Laguerre argument must be nonnegative, got {self.x}', code='invalid_argument')


def laguerre(query):
    """
    Evaluate L_n^alpha(x) by upward recurrence in n at fixed alpha.

    (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    """
    n, alpha, x = query.n, query.alpha, float(query.x)
    if n == 0:
        return 1.0
    if alpha < 0 and n + alpha >= 0:
        # L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x)
        k = -alpha
        prefactor = (-x) ** k * math.exp(log_factorial(n - k) - log_factorial(n))
        return prefactor * laguerre(LaguerreQuery(n - k, k, x))
    previous = 1.0
    current = 1.0 + alpha - x
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + alpha - x) * current - (k + alpha) * previous) / (k + 1)
    return current


def generalized_laguerre(n, alpha, x):
    """Shorthand for laguerre(LaguerreQuery(n, alpha, x))."""
    return laguerre(LaguerreQuery(n, alpha, x))


def log_factorial(n):
    """Return ln(n!)."""
    if n < 0:
        raise EngineError(f'Factorial of negative integer {n}', code='invalid_argument')
    return float(gammaln(n + 1))


def sqrt_factorial_ratio(n, m):
    """(n!/m!)^(1/2), formed in log space."""
    return math.exp(0.5 * (log_factorial(n) - log_factorial(m)))
