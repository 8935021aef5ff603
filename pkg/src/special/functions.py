"""Hermite polynomials, the Gaussian tail and the ρ_n densities.

Hermite polynomials follow the probabilists' convention with the explicit
alternating sum as the primary definition, plus H_{-1} defined through the
Gaussian tail.
"""

import math

import numpy as np
from scipy import special as sp

from ..exceptions import DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)


def gaussian_tail(x: float) -> float:
    """Upper tail Ψ(x) of the standard normal distribution."""
    return float(0.5 * sp.erfc(x / math.sqrt(2.0)))


def hermite(n: int, x: float) -> float:
    """Hermite polynomial H_n(x), with H_{-1}(x) = √(2π) Ψ(x) e^{x²/2}.

    Raises:
        DomainError: if n < -1
    """
    if n < -1:
        raise DomainError(f"Hermite order must be >= -1, got {n}")
    if n == -1:
        # erfcx keeps Ψ(x) e^{x²/2} finite for large x
        return float(SQRT_2PI * 0.5 * sp.erfcx(x / math.sqrt(2.0)))

    total = 0.0
    for j in range(n // 2 + 1):
        total += (
            (-1) ** j
            * x ** (n - 2 * j)
            / (math.factorial(j) * math.factorial(n - 2 * j) * 2**j)
        )
    return math.factorial(n) * total


def rho(n: int, u: float) -> float:
    """ρ_n(u) = (2π)^{-(n+1)/2} H_{n-1}(u) e^{-u²/2}; ρ_0 is evaluated as Ψ(u)."""
    if n < 0:
        raise DomainError(f"rho index must be >= 0, got {n}")
    if n == 0:
        return gaussian_tail(u)
    return (2.0 * math.pi) ** (-(n + 1) / 2.0) * hermite(n - 1, u) * math.exp(-u * u / 2.0)


def ball_volume(j: int) -> float:
    """Volume ω_j = π^{j/2} / Γ(j/2 + 1) of the unit ball in R^j."""
    if j < 0:
        raise DomainError(f"ball dimension must be >= 0, got {j}")
    return float(math.pi ** (j / 2.0) / sp.gamma(j / 2.0 + 1.0))


def flag_coeff(n: int, j: int) -> float:
    """Flag coefficient [n j] = C(n, j) ω_n / (ω_{n-j} ω_j)."""
    if not 0 <= j <= n:
        raise DomainError(f"flag coefficient needs 0 <= j <= N, got N={n}, j={j}")
    return math.comb(n, j) * ball_volume(n) / (ball_volume(n - j) * ball_volume(j))


def hermite_array(n: int, x: np.ndarray) -> np.ndarray:
    """Vectorised H_n for n >= 0 (same explicit sum as ``hermite``)."""
    if n < 0:
        raise DomainError(f"hermite_array supports n >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for j in range(n // 2 + 1):
        total += (
            (-1) ** j
            * x ** (n - 2 * j)
            / (math.factorial(j) * math.factorial(n - 2 * j) * 2**j)
        )
    return math.factorial(n) * total
