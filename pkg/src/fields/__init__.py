"""Field simulators and the grid file format."""

from .gaussian import GaussianFieldSpec, gaussian_values, simulate_gaussian
from .grid import FieldGrid, Provenance, dump_grid, load_grid, read_grid, write_grid
from .harmonisable import (
    ConditionedGaussianSpec,
    conditioned_from_draws,
    conditioned_spec,
    gamma_alpha,
    simulate_concatenated,
    simulate_harmonisable,
)
from .subgaussian import simulate_subgaussian

__all__ = [
    # Grid
    "FieldGrid",
    "Provenance",
    "dump_grid",
    "load_grid",
    "read_grid",
    "write_grid",
    # Gaussian
    "GaussianFieldSpec",
    "gaussian_values",
    "simulate_gaussian",
    # Stable classes
    "simulate_subgaussian",
    "simulate_harmonisable",
    "simulate_concatenated",
    # Conditioning
    "ConditionedGaussianSpec",
    "conditioned_spec",
    "conditioned_from_draws",
    "gamma_alpha",
]
