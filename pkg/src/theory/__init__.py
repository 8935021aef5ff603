"""Closed-form and numerical predictions for mean excursion-set geometry."""

from .concatenated import (
    ConcatenatedConstants,
    concatenated_constants,
    concatenated_isotropic_coefficients,
    concatenated_mean_ec_asymptote,
    lambda_j_estimates,
)
from .gaussian import (
    ec_evaluator,
    ec_weights,
    facet_sqrt_dets,
    gaussian_isotropic_coefficients,
    gaussian_mean_ec,
    gaussian_mean_lk_isotropic,
)
from .harmonisable import (
    ConditionalEcCurve,
    conditional_gaussian_mean_ec,
    conditional_mean_ec_predictor,
    harmonisable_isotropic_coefficients,
    harmonisable_k0,
    harmonisable_mean_ec_asymptote,
    harmonisable_mean_ec_asymptote_polytope,
)
from .lifting import stable_mean_lk_asymptote, with_lks
from .prediction import AsymptoticPrediction
from .subgaussian import (
    SubGaussianConstants,
    subgaussian_constants,
    subgaussian_isotropic_coefficients,
    subgaussian_mean_ec_asymptote,
    subgaussian_mean_ec_exact,
    subgaussian_upcrossing_display,
)
from .tauberian import lemma_last_limit, psi_tauberian_limit, tauberian_limit

__all__ = [
    "AsymptoticPrediction",
    # Gaussian
    "facet_sqrt_dets",
    "ec_weights",
    "ec_evaluator",
    "gaussian_mean_ec",
    "gaussian_mean_lk_isotropic",
    "gaussian_isotropic_coefficients",
    # Tail limits
    "tauberian_limit",
    "psi_tauberian_limit",
    "lemma_last_limit",
    # Sub-Gaussian
    "SubGaussianConstants",
    "subgaussian_constants",
    "subgaussian_mean_ec_asymptote",
    "subgaussian_mean_ec_exact",
    "subgaussian_isotropic_coefficients",
    "subgaussian_upcrossing_display",
    # Harmonisable
    "harmonisable_k0",
    "harmonisable_mean_ec_asymptote",
    "harmonisable_mean_ec_asymptote_polytope",
    "harmonisable_isotropic_coefficients",
    "conditional_gaussian_mean_ec",
    "conditional_mean_ec_predictor",
    "ConditionalEcCurve",
    # Concatenated
    "ConcatenatedConstants",
    "concatenated_constants",
    "concatenated_mean_ec_asymptote",
    "concatenated_isotropic_coefficients",
    "lambda_j_estimates",
    # LK curvatures
    "stable_mean_lk_asymptote",
    "with_lks",
]
