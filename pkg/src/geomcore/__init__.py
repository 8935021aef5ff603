"""Integral geometry of rectangles and convex polytopes."""

from .algebra import det_rank_identity_check, numerical_rank
from .crofton import crofton_lift
from .polytope import ConvexPolytope, support_function, support_width
from .rectangle import (
    Facet,
    Rectangle,
    elementary_symmetric,
    facets_containing_origin,
    lk_rectangle,
    lk_vector,
    steiner_tube_volume,
)

__all__ = [
    # Rectangles
    "Rectangle",
    "Facet",
    "facets_containing_origin",
    "lk_rectangle",
    "lk_vector",
    "elementary_symmetric",
    "steiner_tube_volume",
    # Polytopes
    "ConvexPolytope",
    "support_function",
    "support_width",
    # Crofton
    "crofton_lift",
    # Appendix identity
    "det_rank_identity_check",
    "numerical_rank",
]
