"""Excursion sets of grids and their measured geometry."""

from .crossings import UpcrossingCount, upcrossings_1d
from .cubical import CubicalSet, cell_mask, euler_characteristic, threshold
from .geometry import ExcursionGeometry, lk_estimates
from .oracle import euler_oracle_2d

__all__ = [
    "CubicalSet",
    "cell_mask",
    "threshold",
    "euler_characteristic",
    "ExcursionGeometry",
    "lk_estimates",
    "UpcrossingCount",
    "upcrossings_1d",
    "euler_oracle_2d",
]
