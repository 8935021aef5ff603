"""Mean Euler characteristic of concatenated-harmonisable fields.

With N' wave pairs per stable weight the conditional spectral matrix of the
leading term has rank N', so the facet sums stop at dimension N' and
involve Λ(J) = E|det W(J)|^{1/2} with W = Σ_ℓ ω_ℓ ω_ℓᵀ over N' frequencies.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from ..exceptions import DomainError, InputError
from ..geomcore import Rectangle, facets_containing_origin
from ..sampling import RngStream, SpectralMeasure, sample_frequencies
from ..special import SERIES_TAIL_CONST, stable_constants
from .prediction import AsymptoticPrediction

logger = logging.getLogger(__name__)


def lambda_j_estimates(
    mu: SpectralMeasure,
    n_prime: int,
    draws: int = 100_000,
    stream: RngStream | None = None,
) -> dict[tuple[int, ...], tuple[float, float]]:
    """Monte Carlo mean and standard error of |det W(J)|^{1/2} for |J| ≤ N'.

    Larger index sets are omitted: W(J) then has rank below |J|.
    """
    if not 1 <= n_prime <= mu.dimension:
        raise DomainError(f"n_prime must lie in [1, {mu.dimension}], got {n_prime}")
    if draws < 2:
        raise DomainError(f"need at least 2 draws, got {draws}")
    omegas = sample_frequencies(mu, draws * n_prime, stream or RngStream(0, 0))
    omegas = omegas.reshape(draws, n_prime, mu.dimension)
    gram = np.einsum("dli,dlj->dij", omegas, omegas)
    unit = Rectangle((1.0,) * mu.dimension)
    out: dict[tuple[int, ...], tuple[float, float]] = {}
    for n in range(1, n_prime + 1):
        for facet in facets_containing_origin(unit, n):
            sub = gram[:, facet.axes][:, :, facet.axes]
            roots = np.sqrt(np.abs(np.linalg.det(sub)))
            out[facet.axes] = (float(roots.mean()), float(roots.std(ddof=1) / math.sqrt(draws)))
    return out


@dataclass(frozen=True)
class ConcatenatedConstants:
    """K_0..K_{N'} and the Λ(J) estimates for one (α, N', μ)."""

    alpha: float
    n_prime: int
    mu0: float
    k: tuple[float, ...]
    lambdas: dict[tuple[int, ...], tuple[float, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "n_prime": self.n_prime,
            "mu0": self.mu0,
            "k": list(self.k),
            "lambdas": {
                ",".join(map(str, axes)): {"mean": m, "stderr": s}
                for axes, (m, s) in self.lambdas.items()
            },
        }


def _c_nj(alpha: float, n: int, j: int, n_prime: int, b_alpha: float) -> float:
    return (
        alpha
        * SERIES_TAIL_CONST
        / b_alpha
        * 2.0 ** ((alpha + n - 2 * j - 3) / 2.0)
        * float(sp.gamma((alpha + n - 1 - 2 * j) / 2.0))
        * n_prime ** ((alpha - n) / 2.0)
    )


def concatenated_constants(
    alpha: float,
    n_prime: int,
    mu: SpectralMeasure,
    draws: int = 100_000,
    stream: RngStream | None = None,
) -> ConcatenatedConstants:
    """K_0 = 2^{α/2-1} Γ((1+α)/2) N'^{α/2} / (√π b_α) and, for 1 ≤ n ≤ N',
    K_n = (n-1)!/(2π)^{(n+1)/2} Σ_j (-1)^j C_nj / (j! (n-1-2j)! 2^j).

    At N' = 1 these reduce to the harmonisable constants.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    b_alpha = stable_constants(alpha).b_alpha
    k = [
        2.0 ** (alpha / 2.0 - 1.0)
        * float(sp.gamma((1.0 + alpha) / 2.0))
        * n_prime ** (alpha / 2.0)
        / (math.sqrt(math.pi) * b_alpha)
    ]
    for n in range(1, n_prime + 1):
        series = sum(
            (-1) ** j
            * _c_nj(alpha, n, j, n_prime, b_alpha)
            / (math.factorial(j) * math.factorial(n - 1 - 2 * j) * 2.0**j)
            for j in range((n - 1) // 2 + 1)
        )
        k.append(math.factorial(n - 1) / (2.0 * math.pi) ** ((n + 1) / 2.0) * series)
    lambdas = lambda_j_estimates(mu, n_prime, draws, stream)
    return ConcatenatedConstants(
        alpha=alpha, n_prime=n_prime, mu0=mu.total_mass, k=tuple(k), lambdas=lambdas
    )


def concatenated_mean_ec_asymptote(
    constants: ConcatenatedConstants, rect: Rectangle
) -> AsymptoticPrediction:
    """u^{α} E φ → μ_0 C_α (K_0 + Σ_{n≤N'} K_n Σ_{J∈O_n} |J| Λ(J))."""
    if constants.n_prime > rect.dimension:
        raise InputError(f"N'={constants.n_prime} exceeds the dimension {rect.dimension}")
    scale = constants.mu0 * stable_constants(constants.alpha).c_alpha
    breakdown = [scale * constants.k[0]]
    variance = 0.0
    for n in range(1, rect.dimension + 1):
        if n > constants.n_prime:
            breakdown.append(0.0)
            continue
        total = 0.0
        for facet in facets_containing_origin(rect, n):
            if facet.axes not in constants.lambdas:
                raise InputError(f"no Λ estimate for facet axes {facet.axes}")
            mean, se = constants.lambdas[facet.axes]
            total += facet.measure * mean
            variance += (scale * constants.k[n] * facet.measure * se) ** 2
        breakdown.append(scale * constants.k[n] * total)
    return AsymptoticPrediction.from_breakdown(
        constants.alpha, breakdown, standard_error=math.sqrt(variance)
    )


def concatenated_isotropic_coefficients(constants: ConcatenatedConstants, dimension: int) -> list[float]:
    """Weights of ℒ_k(M) when Λ(J) depends on |J| only."""
    scale = constants.mu0 * stable_constants(constants.alpha).c_alpha
    coefficients = [scale * constants.k[0]]
    for n in range(1, dimension + 1):
        if n > constants.n_prime:
            coefficients.append(0.0)
            continue
        axes = tuple(range(n))
        coefficients.append(scale * constants.k[n] * constants.lambdas[axes][0])
    return coefficients
