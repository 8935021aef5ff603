"""Rectangles T = ∏[0, T_i], their facets through the origin and their LK curvatures."""

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

from ..exceptions import DomainError
from ..special import ball_volume


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned box with one corner at the origin."""

    side_lengths: tuple[float, ...]

    def __post_init__(self) -> None:
        sides = tuple(float(s) for s in self.side_lengths)
        if not sides:
            raise DomainError("a rectangle needs at least one side")
        if any(not (s > 0.0 and math.isfinite(s)) for s in sides):
            raise DomainError(f"side lengths must be positive and finite, got {sides}")
        object.__setattr__(self, "side_lengths", sides)

    @classmethod
    def of(cls, *sides: float) -> "Rectangle":
        return cls(tuple(sides))

    @property
    def dimension(self) -> int:
        return len(self.side_lengths)

    @property
    def volume(self) -> float:
        return math.prod(self.side_lengths)

    def vertices(self) -> list[tuple[float, ...]]:
        return list(itertools.product(*((0.0, s) for s in self.side_lengths)))

    def scaled(self, factor: float) -> "Rectangle":
        return Rectangle(tuple(factor * s for s in self.side_lengths))


@dataclass(frozen=True)
class Facet:
    """A facet J of T containing the origin, spanned by the axes σ(J)."""

    axes: tuple[int, ...]
    measure: float

    @property
    def dimension(self) -> int:
        return len(self.axes)


def facets_containing_origin(rect: Rectangle, j: int) -> list[Facet]:
    """The C(N, j) facets of dimension j through the origin, with measure |J|.

    Axes are zero-based coordinate indices.
    """
    n = rect.dimension
    if not 0 <= j <= n:
        raise DomainError(f"facet dimension must lie in [0, {n}], got {j}")
    return [
        Facet(axes=axes, measure=math.prod(rect.side_lengths[i] for i in axes))
        for axes in itertools.combinations(range(n), j)
    ]


def elementary_symmetric(values: Sequence[float]) -> list[float]:
    """e_0..e_n of the given values."""
    coeffs = [1.0] + [0.0] * len(values)
    for count, v in enumerate(values, start=1):
        for k in range(count, 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs


def lk_rectangle(rect: Rectangle, j: int) -> float:
    """ℒ_j(T): the degree-j elementary symmetric polynomial of the side lengths."""
    if j < 0:
        raise DomainError(f"LK index must be >= 0, got {j}")
    if j > rect.dimension:
        return 0.0
    return elementary_symmetric(rect.side_lengths)[j]


def lk_vector(rect: Rectangle) -> list[float]:
    """(ℒ_0(T), ..., ℒ_N(T))."""
    return elementary_symmetric(rect.side_lengths)


def steiner_tube_volume(lks: Sequence[float], rho: float, ambient_dim: int) -> float:
    """Volume of the ρ-tube Σ_j ω_{N'-j} ρ^{N'-j} ℒ_j around a convex set in R^{N'}."""
    if rho < 0.0:
        raise DomainError(f"tube radius must be >= 0, got {rho}")
    if ambient_dim < len(lks) - 1:
        raise DomainError(
            f"ambient dimension {ambient_dim} below set dimension {len(lks) - 1}"
        )
    return sum(
        ball_volume(ambient_dim - j) * rho ** (ambient_dim - j) * lk for j, lk in enumerate(lks)
    )
