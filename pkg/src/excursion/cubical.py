"""Cubical complexes of thresholded grids.

A vertex is in the excursion set when its value is at least u; a k-cell is
in when all 2^k of its vertices are (closed-vertex rule).
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ..fields import FieldGrid


def cell_mask(vertices: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Inclusion of the cells spanned by ``axes`` (all corners included)."""
    mask = vertices
    for axis in axes:
        lo = [slice(None)] * mask.ndim
        hi = [slice(None)] * mask.ndim
        lo[axis] = slice(0, -1)
        hi[axis] = slice(1, None)
        mask = mask[tuple(lo)] & mask[tuple(hi)]
    return mask


@dataclass(frozen=True, eq=False)
class CubicalSet:
    """Binary vertex grid with its per-dimension cell counts n_0..n_N."""

    vertices: np.ndarray
    cell_counts: tuple[int, ...]
    level: float | None = None

    @classmethod
    def from_vertices(cls, vertices: np.ndarray, level: float | None = None) -> "CubicalSet":
        verts = np.asarray(vertices, dtype=bool).copy()
        verts.setflags(write=False)
        n = verts.ndim
        counts = tuple(
            sum(int(cell_mask(verts, axes).sum()) for axes in itertools.combinations(range(n), k))
            for k in range(n + 1)
        )
        return cls(vertices=verts, cell_counts=counts, level=level)

    @property
    def dimension(self) -> int:
        return self.vertices.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        """Cells per axis."""
        return tuple(s - 1 for s in self.vertices.shape)


def threshold(grid: FieldGrid, u: float) -> CubicalSet:
    """Cubical excursion set {t : f(t) >= u} of a grid."""
    return CubicalSet.from_vertices(grid.values >= u, level=u)


def euler_characteristic(cubical: CubicalSet) -> int:
    """Σ_k (-1)^k n_k."""
    return sum((-1) ** k * n for k, n in enumerate(cubical.cell_counts))
