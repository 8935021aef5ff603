"""Special functions and stable-index constants."""

from .constants import SERIES_TAIL_CONST, StableConstants, c_function, stable_constants
from .functions import ball_volume, flag_coeff, gaussian_tail, hermite, hermite_array, rho
from .stable_density import (
    kanter_a,
    kanter_log_a,
    positive_stable_expectation,
    positive_stable_pdf,
)

__all__ = [
    # Polynomials and densities
    "hermite",
    "hermite_array",
    "gaussian_tail",
    "rho",
    # Geometry constants
    "ball_volume",
    "flag_coeff",
    # Stable constants
    "StableConstants",
    "stable_constants",
    "c_function",
    "SERIES_TAIL_CONST",
    # One-sided stable law
    "kanter_a",
    "kanter_log_a",
    "positive_stable_expectation",
    "positive_stable_pdf",
]
