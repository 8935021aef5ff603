"""Mean Euler characteristic of sub-Gaussian SαS fields f = √X · g."""

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from ..core import escalating_quadrature, log_slow_operations
from ..exceptions import DomainError, InputError, QuadratureError
from ..fields import GaussianFieldSpec
from ..geomcore import Rectangle, facets_containing_origin
from ..sampling import RngStream, sample_positive_stable
from ..special import positive_stable_expectation, stable_constants
from .gaussian import ec_evaluator, facet_sqrt_dets
from .prediction import AsymptoticPrediction
from .tauberian import psi_tauberian_limit

logger = logging.getLogger(__name__)

# Stream used by the Monte Carlo fallback when the caller supplies none
FALLBACK_SEED = 20_240_917


@dataclass(frozen=True)
class SubGaussianConstants:
    """K_0..K_N such that u^{α} E φ → K_0 + Σ_n K_n Σ_{J∈O_n} |J| |det Λ_J|^{1/2}."""

    alpha: float
    sigma_g: float
    k: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return len(self.k) - 1

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "sigma_g": self.sigma_g, "k": list(self.k)}


def subgaussian_constants(alpha: float, sigma_g: float, dimension: int) -> SubGaussianConstants:
    """Closed-form K_n for 0 < α < 2.

    K_0 = 2^{α/2-1} σ^α Γ((α+1)/2) / (√π Γ(1-α/2)) and, for n ≥ 1,
    K_n = α c 2^{α/2-1} σ^{α-n} (n-1)!/π^{(n+1)/2}
          Σ_j (-1)^j Γ((α+n-1-2j)/2) / (2^{2j+1} j! (n-1-2j)!).
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if not sigma_g > 0.0:
        raise DomainError(f"sigma_g must be positive, got {sigma_g}")
    if dimension < 0:
        raise DomainError(f"dimension must be non-negative, got {dimension}")
    c = stable_constants(alpha).tail_const
    k = [psi_tauberian_limit(alpha, sigma_g)]
    for n in range(1, dimension + 1):
        series = 0.0
        for j in range((n - 1) // 2 + 1):
            series += (
                (-1) ** j
                * float(sp.gamma((alpha + n - 1 - 2 * j) / 2.0))
                / (2.0 ** (2 * j + 1) * math.factorial(j) * math.factorial(n - 1 - 2 * j))
            )
        k.append(
            alpha
            * c
            * 2.0 ** (alpha / 2.0 - 1.0)
            * sigma_g ** (alpha - n)
            * math.factorial(n - 1)
            / math.pi ** ((n + 1) / 2.0)
            * series
        )
    return SubGaussianConstants(alpha=alpha, sigma_g=sigma_g, k=tuple(k))


def subgaussian_mean_ec_asymptote(
    constants: SubGaussianConstants,
    rect: Rectangle,
    lambda_dets: Mapping[tuple[int, ...], float] | np.ndarray,
) -> AsymptoticPrediction:
    """Combine K_n with the facet geometry of T.

    ``lambda_dets`` maps facet axes to |det Λ_J|^{1/2}; a spectral matrix is
    accepted too and its facet determinants are taken.
    """
    if constants.dimension != rect.dimension:
        raise InputError(f"constants for N={constants.dimension} on a {rect.dimension}-D rectangle")
    if isinstance(lambda_dets, np.ndarray):
        lambda_dets = facet_sqrt_dets(lambda_dets, rect)
    breakdown = [constants.k[0]]
    for n in range(1, rect.dimension + 1):
        total = 0.0
        for facet in facets_containing_origin(rect, n):
            if facet.axes not in lambda_dets:
                raise InputError(f"missing determinant for facet axes {facet.axes}")
            total += facet.measure * lambda_dets[facet.axes]
        breakdown.append(constants.k[n] * total)
    return AsymptoticPrediction.from_breakdown(constants.alpha, breakdown)


def subgaussian_isotropic_coefficients(constants: SubGaussianConstants, lambda2: float) -> list[float]:
    """c_k = K_k λ_2^{k/2}, the weight of ℒ_k(M) for an isotropic Gaussian part."""
    return [value * lambda2 ** (n / 2.0) for n, value in enumerate(constants.k)]


@log_slow_operations(threshold_seconds=5.0)
def subgaussian_mean_ec_exact(
    spec: GaussianFieldSpec,
    alpha: float,
    rect: Rectangle,
    u: float,
    base_limit: int = 200,
    max_attempts: int = 4,
    fallback_draws: int = 200_000,
    stream: RngStream | None = None,
) -> float:
    """E φ(A_u(√X g, T)) = E_X[h(X)], h(x) = Gaussian mean EC at level u/√x.

    Quadrature over the positive (α/2)-stable law with an escalating
    subdivision budget, then Monte Carlo over X.

    Raises:
        QuadratureError: if quadrature fails and ``fallback_draws`` is 0
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    evaluate = ec_evaluator(spec.sigma, rect, facet_sqrt_dets(spec.spectral_moments, rect))

    # Beyond ±60σ every ρ_n term is zero to double precision
    cap = 60.0 * spec.sigma

    def h(x: float) -> float:
        if u == 0.0:
            return evaluate(0.0)
        level = u / math.sqrt(x) if x > 0.0 else math.copysign(math.inf, u)
        return evaluate(max(-cap, min(cap, level)))

    scale_hint = (u / spec.sigma) ** 2 if u != 0.0 else None
    try:
        return escalating_quadrature(
            lambda limit: positive_stable_expectation(h, alpha / 2.0, scale_hint, limit),
            base_limit=base_limit,
            max_attempts=max_attempts,
        )
    except QuadratureError as exc:
        if fallback_draws <= 0:
            raise
        logger.warning(
            f"Quadrature at u={u} did not converge ({exc}); "
            f"falling back to Monte Carlo with {fallback_draws} draws"
        )
    stream = stream or RngStream(FALLBACK_SEED, 0)
    mixing = sample_positive_stable(alpha / 2.0, stream, size=fallback_draws)
    return float(np.mean([h(x) for x in np.atleast_1d(mixing)]))


def subgaussian_upcrossing_display(alpha: float, sigma_g: float, lambda11: float, length: float) -> float:
    """Closed 1-D form for the mean number of upcrossings times u^{α}.

    2^{α/2-1} Γ(1+α/2) λ_11^{1/2} T / (π Γ(1-α/2) σ^{(1-α)/2}). It agrees with
    the K_1 term of subgaussian_constants only at σ = 1; use that instead.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    return (
        2.0 ** (alpha / 2.0 - 1.0)
        * float(sp.gamma(1.0 + alpha / 2.0))
        * math.sqrt(lambda11)
        * length
        / (math.pi * float(sp.gamma(1.0 - alpha / 2.0)) * sigma_g ** ((1.0 - alpha) / 2.0))
    )
