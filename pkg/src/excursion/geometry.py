"""Lipschitz–Killing curvature estimates of cubical excursion sets.

ℒ̂_0 is the Euler characteristic and ℒ̂_N the covered volume. For 0 < j < N
the estimator integrates the Euler characteristic of A ∩ V over the
axis-aligned (N-j)-flats V through grid nodes (trapezoid weights). Each
slice's Euler characteristic is split into vertex-local contributions:

  - vertices on the boundary of T ∩ V come from the axis-aligned frame of T
    and enter with weight 1, which makes a solid box exact;
  - interior vertices come from level-set boundary and enter with the
    isotropic Crofton normalisation [N j] / C(N, j).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import UnsupportedDimensionError
from ..geomcore import Rectangle
from ..special import flag_coeff
from .cubical import CubicalSet, cell_mask, euler_characteristic

MAX_LK_DIMENSION = 3


@dataclass(frozen=True)
class ExcursionGeometry:
    level: float | None
    euler: int
    lk_estimates: tuple[float, ...]
    cell_counts: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "euler": self.euler,
            "lk_estimates": list(self.lk_estimates),
            "cell_counts": list(self.cell_counts),
        }


def _corner_counts(vertices: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Per vertex, the number of included cells spanned by ``axes`` having it as a corner."""
    if not axes:
        return vertices.astype(float)
    cells = cell_mask(vertices, axes).astype(float)
    counts = np.zeros(vertices.shape)
    for offsets in itertools.product((0, 1), repeat=len(axes)):
        target = [slice(None)] * vertices.ndim
        for axis, offset in zip(axes, offsets, strict=True):
            target[axis] = slice(offset, offset + vertices.shape[axis] - 1)
        counts[tuple(target)] += cells
    return counts


def _trapezoid_weights(n: int, spacing: float) -> np.ndarray:
    w = np.full(n, spacing)
    w[0] = w[-1] = spacing / 2.0
    return w


def _slice_integral(vertices: np.ndarray, fixed: tuple[int, ...], spacing: tuple[float, ...]) -> tuple[float, float]:
    """(frame part, interior part) of Σ over slices of φ(A ∩ V), trapezoid-weighted."""
    n = vertices.ndim
    free = tuple(a for a in range(n) if a not in fixed)

    local = np.zeros(vertices.shape)
    for size in range(len(free) + 1):
        for axes in itertools.combinations(free, size):
            local += (-1) ** size * _corner_counts(vertices, axes) / 2**size

    weight = np.ones(vertices.shape)
    for axis in fixed:
        shape = [1] * n
        shape[axis] = vertices.shape[axis]
        weight = weight * _trapezoid_weights(vertices.shape[axis], spacing[axis]).reshape(shape)

    on_frame = np.zeros(vertices.shape, dtype=bool)
    for axis in free:
        index = np.arange(vertices.shape[axis])
        shape = [1] * n
        shape[axis] = vertices.shape[axis]
        edge = ((index == 0) | (index == vertices.shape[axis] - 1)).reshape(shape)
        on_frame = on_frame | edge

    contribution = weight * local
    return float(contribution[on_frame].sum()), float(contribution[~on_frame].sum())


def lk_estimates(cubical: CubicalSet, rect: Rectangle) -> ExcursionGeometry:
    """ℒ̂_0..ℒ̂_N of a cubical excursion set over the rectangle it was sampled on.

    Raises:
        UnsupportedDimensionError: for N > 3
    """
    n = cubical.dimension
    if n > MAX_LK_DIMENSION:
        raise UnsupportedDimensionError("lk_estimates", n, "N <= 3")
    spacing = tuple(
        t / (v - 1) for t, v in zip(rect.side_lengths, cubical.vertices.shape, strict=True)
    )
    euler = euler_characteristic(cubical)

    estimates = [float(euler)]
    for j in range(1, n):
        isotropic = flag_coeff(n, j) / math.comb(n, j)
        total = 0.0
        for fixed in itertools.combinations(range(n), j):
            frame, interior = _slice_integral(cubical.vertices, fixed, spacing)
            total += frame + isotropic * interior
        estimates.append(total)
    estimates.append(cubical.cell_counts[n] * math.prod(spacing))

    return ExcursionGeometry(
        level=cubical.level,
        euler=euler,
        lk_estimates=tuple(estimates),
        cell_counts=cubical.cell_counts,
    )
