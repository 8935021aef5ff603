"""Sub-Gaussian fields f = X^{1/2} g with X positive α/2-stable."""

import math

from ..exceptions import DomainError
from ..geomcore import Rectangle
from ..sampling import RngStream, sample_positive_stable
from .gaussian import GaussianFieldSpec, gaussian_values
from .grid import FieldGrid, Provenance

# Sub-stream layout: the mixing variable and the Gaussian part never share draws
MIXING_STREAM = 0
GAUSSIAN_STREAM = 1


def simulate_subgaussian(
    spec: GaussianFieldSpec,
    alpha: float,
    rect: Rectangle,
    resolution: tuple[int, ...],
    stream: RngStream,
) -> FieldGrid:
    """One draw of X scaling one independent Gaussian realization.

    The Gaussian part is exactly ``simulate_gaussian(spec, rect, resolution,
    stream.child(GAUSSIAN_STREAM))``; the provenance records X.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    mixing = float(sample_positive_stable(alpha / 2.0, stream.child(MIXING_STREAM)))
    g = gaussian_values(spec, rect, resolution, stream.child(GAUSSIAN_STREAM).generator())
    return FieldGrid(
        rectangle=rect,
        resolution=tuple(resolution),
        values=math.sqrt(mixing) * g,
        provenance=Provenance(
            field_kind="sub_gaussian",
            master_seed=stream.master_seed,
            stream_index=stream.stream_index,
            alpha=alpha,
            mixing=mixing,
            spec=spec.to_dict(),
        ),
    )
