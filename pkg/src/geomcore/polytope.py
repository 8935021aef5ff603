"""Convex polytopes in vertex representation and their support functions."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError
from .rectangle import Rectangle


@dataclass(frozen=True)
class ConvexPolytope:
    """Convex hull of a finite vertex list."""

    vertices: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        verts = tuple(tuple(float(c) for c in v) for v in self.vertices)
        if not verts:
            raise DomainError("a polytope needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise DomainError("all vertices must share one dimension")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_rectangle(cls, rect: Rectangle) -> "ConvexPolytope":
        return cls(tuple(rect.vertices()))

    @classmethod
    def segment(cls, length: float, axis: int, dimension: int) -> "ConvexPolytope":
        end = [0.0] * dimension
        end[axis] = length
        return cls(((0.0,) * dimension, tuple(end)))

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)


def support_function(polytope: ConvexPolytope, direction: Sequence[float] | np.ndarray) -> float:
    """h_M(ω) = max over vertices of ⟨ω, v⟩."""
    omega = np.asarray(direction, dtype=float)
    if omega.shape != (polytope.dimension,):
        raise DomainError(
            f"direction of shape {omega.shape} does not match dimension {polytope.dimension}"
        )
    return float(np.max(polytope.as_array() @ omega))


def support_width(polytope: ConvexPolytope, directions: np.ndarray) -> np.ndarray:
    """Width h_M(ω) + h_M(-ω) of M along each row of ``directions``.

    For a rectangle at the origin this is Σ_j |ω_j| T_j.
    """
    proj = polytope.as_array() @ np.asarray(directions, dtype=float).T
    return proj.max(axis=0) - proj.min(axis=0)
