"""Level upcrossings of one-dimensional grids."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import UnsupportedDimensionError
from ..fields import FieldGrid


@dataclass(frozen=True)
class UpcrossingCount:
    count: int
    start_above: int

    @property
    def euler(self) -> int:
        return self.count + self.start_above


def upcrossings_1d(grid: FieldGrid, u: float) -> UpcrossingCount:
    """Indices i with f_i < u <= f_{i+1}, and whether f(0) >= u."""
    if grid.dimension != 1:
        raise UnsupportedDimensionError("upcrossings_1d", grid.dimension, "N = 1")
    v = grid.values
    count = int(np.count_nonzero((v[:-1] < u) & (v[1:] >= u)))
    return UpcrossingCount(count=count, start_above=int(v[0] >= u))
