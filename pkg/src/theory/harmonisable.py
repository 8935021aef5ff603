"""Mean Euler characteristic of harmonisable SαS fields.

Given its arrivals and frequencies the field is Gaussian, so E φ(A_u) is
the Gaussian formula under σ̃², λ̃ averaged over those draws. Its tail
depends on μ only through μ_0 and the first absolute moments.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from ..core import log_slow_operations
from ..exceptions import DomainError, InputError
from ..fields import ConditionedGaussianSpec, conditioned_from_draws, gamma_alpha
from ..fields.harmonisable import ARRIVAL_STREAM, FREQUENCY_STREAM
from ..geomcore import ConvexPolytope, Rectangle, support_width
from ..sampling import MeasureMoments, RngStream, SpectralMeasure, sample_arrivals, sample_frequencies
from ..special import stable_constants
from .gaussian import ec_evaluator, facet_sqrt_dets
from .prediction import AsymptoticPrediction

logger = logging.getLogger(__name__)


def harmonisable_k0(alpha: float) -> float:
    """2^{α/2-1} Γ((1+α)/2) / (√π b_α), the ℒ_0 weight before the C_α μ_0 factor."""
    consts = stable_constants(alpha)
    return (
        2.0 ** (alpha / 2.0 - 1.0)
        * float(sp.gamma((1.0 + alpha) / 2.0))
        / (math.sqrt(math.pi) * consts.b_alpha)
    )


def harmonisable_mean_ec_asymptote(
    moments: MeasureMoments, alpha: float, rect: Rectangle
) -> AsymptoticPrediction:
    """u^{α} E φ → C_α μ_0 (K_0 + (1/2π) Σ_j μ_j T_j).

    Only the vertex and edge terms survive; higher facets decay faster.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if len(moments.abs_first) != rect.dimension:
        raise InputError(f"{len(moments.abs_first)} moments for a {rect.dimension}-D rectangle")
    scale = stable_constants(alpha).c_alpha * moments.mu0
    edges = sum(m * t for m, t in zip(moments.abs_first, rect.side_lengths, strict=True))
    breakdown = [scale * harmonisable_k0(alpha), scale * edges / (2.0 * math.pi)]
    breakdown += [0.0] * (rect.dimension - 1)
    return AsymptoticPrediction.from_breakdown(alpha, breakdown)


def harmonisable_isotropic_coefficients(moments: MeasureMoments, alpha: float) -> list[float]:
    """Weights of ℒ_0 and ℒ_1 for a rotation-invariant μ; the rest are zero."""
    scale = stable_constants(alpha).c_alpha * moments.mu0
    n = len(moments.abs_first)
    coefficients = [scale * harmonisable_k0(alpha), scale * moments.abs_first[0] / (2.0 * math.pi)]
    return (coefficients + [0.0] * n)[: n + 1]


def harmonisable_mean_ec_asymptote_polytope(
    mu: SpectralMeasure,
    alpha: float,
    polytope: ConvexPolytope,
    draws: int = 200_000,
    stream: RngStream | None = None,
) -> AsymptoticPrediction:
    """Same limit for a convex polytope, the edge term becoming the mean width.

    C_α μ_0 (K_0 + (1/2π) E[h(ω) + h(-ω)]) with ω ~ μ/μ_0 and h the support
    function; the expectation is a Monte Carlo mean with its standard error.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if mu.dimension != polytope.dimension:
        raise InputError(f"{mu.dimension}-D measure for a {polytope.dimension}-D polytope")
    omegas = sample_frequencies(mu, draws, stream or RngStream(0, 0))
    widths = support_width(polytope, omegas)
    scale = stable_constants(alpha).c_alpha * mu.total_mass
    width_mean = float(widths.mean())
    width_se = float(widths.std(ddof=1) / math.sqrt(draws)) if draws > 1 else 0.0
    breakdown = [scale * harmonisable_k0(alpha), scale * width_mean / (2.0 * math.pi)]
    breakdown += [0.0] * (polytope.dimension - 1)
    return AsymptoticPrediction.from_breakdown(
        alpha, breakdown, standard_error=scale * width_se / (2.0 * math.pi)
    )


def conditional_gaussian_mean_ec(cspec: ConditionedGaussianSpec, rect: Rectangle, u: float) -> float:
    """Gaussian mean EC under σ̃², λ̃; a singular λ̃_J contributes nothing."""
    dets = facet_sqrt_dets(cspec.lambda_tilde, rect, allow_singular=True)
    return ec_evaluator(math.sqrt(cspec.sigma_tilde_sq), rect, dets)(u)


@dataclass(frozen=True, eq=False)
class ConditionalEcCurve:
    """Monte Carlo mean of the conditional Gaussian EC at each level."""

    levels: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    draws: int

    def value_at(self, u: float) -> float:
        matches = np.flatnonzero(np.isclose(self.levels, u))
        if matches.size == 0:
            raise InputError(f"level {u} was not evaluated")
        return float(self.mean[matches[0]])

    def to_dict(self) -> dict:
        return {
            "levels": self.levels.tolist(),
            "mean": self.mean.tolist(),
            "stderr": self.stderr.tolist(),
            "draws": self.draws,
        }


@log_slow_operations(threshold_seconds=10.0)
def conditional_mean_ec_predictor(
    mu: SpectralMeasure,
    alpha: float,
    k: int,
    rect: Rectangle,
    levels,
    draws: int,
    master_seed: int,
    n_prime: int = 1,
) -> ConditionalEcCurve:
    """Average the conditional Gaussian EC over fresh arrivals and frequencies.

    Draw i uses the streams of replicate i under ``master_seed``, so with the
    experiment's seed it conditions on exactly the simulated realizations.
    """
    if draws < 1:
        raise DomainError(f"draws must be >= 1, got {draws}")
    levels = np.asarray(levels, dtype=float)
    scale = gamma_alpha(alpha, mu.total_mass)
    values = np.empty((draws, levels.size))
    for i in range(draws):
        stream = RngStream(master_seed, i)
        arrivals = sample_arrivals(k, stream.child(ARRIVAL_STREAM))
        omegas = sample_frequencies(mu, k * n_prime, stream.child(FREQUENCY_STREAM))
        cspec = conditioned_from_draws(
            alpha, scale, arrivals.gammas, omegas.reshape(k, n_prime, mu.dimension)
        )
        dets = facet_sqrt_dets(cspec.lambda_tilde, rect, allow_singular=True)
        evaluate = ec_evaluator(math.sqrt(cspec.sigma_tilde_sq), rect, dets)
        values[i] = [evaluate(u) for u in levels]
    stderr = values.std(axis=0, ddof=1) / math.sqrt(draws) if draws > 1 else np.zeros(levels.size)
    logger.debug(f"Conditional predictor averaged {draws} draws over {levels.size} levels")
    return ConditionalEcCurve(levels=levels, mean=values.mean(axis=0), stderr=stderr, draws=draws)
