"""Independent Euler characteristic of 2-D cubical sets by component labelling.

Foreground components use 4-connectivity of included vertices (an edge is in
the set exactly when both endpoints are). Holes are components of excluded
vertices under 8-connectivity that do not touch the grid frame.
"""

import numpy as np
from scipy import ndimage

from ..exceptions import UnsupportedDimensionError
from .cubical import CubicalSet

_FOUR = ndimage.generate_binary_structure(2, 1)
_EIGHT = ndimage.generate_binary_structure(2, 2)


def euler_oracle_2d(cubical: CubicalSet) -> int:
    if cubical.dimension != 2:
        raise UnsupportedDimensionError("euler_oracle_2d", cubical.dimension, "N = 2")
    verts = cubical.vertices
    _, components = ndimage.label(verts, structure=_FOUR)

    labels, gaps = ndimage.label(~verts, structure=_EIGHT)
    frame = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    touching = np.setdiff1d(np.unique(frame), [0]).size
    return int(components) - (int(gaps) - touching)
