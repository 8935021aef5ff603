"""Positive strictly stable variables with Laplace transform e^{-t^a}."""

import numpy as np

from ..exceptions import DomainError
from .streams import RngStream


def sample_positive_stable(
    index: float,
    stream: RngStream,
    size: int | tuple[int, ...] | None = None,
) -> float | np.ndarray:
    """Draw X with E e^{-tX} = e^{-t^index}, 0 < index < 1.

    Uses the Chambers–Mallows–Stuck construction specialised to total skewness,
    which for a positive law reduces to Kanter's form
    X = (A(U)/W)^{(1-a)/a}, U ~ U(0, π), W ~ Exp(1). This is the law
    S_a(cos(πa/2)^{1/a}, 1, 0).
    """
    if not 0.0 < index < 1.0:
        raise DomainError(f"positive stable index must lie in (0, 1), got {index}")
    a = index
    rng = stream.generator()
    u = rng.uniform(0.0, np.pi, size=size)
    w = rng.standard_exponential(size=size)
    # U(0, π) is open on the left in practice; guard the measure-zero endpoint
    u = np.where(u == 0.0, np.finfo(float).tiny, u)
    log_amp = (
        a / (1.0 - a) * np.log(np.sin(a * u))
        + np.log(np.sin((1.0 - a) * u))
        - np.log(np.sin(u)) / (1.0 - a)
    )
    x = np.exp((1.0 - a) / a * (log_amp - np.log(w)))
    if size is None:
        return float(x)
    return x
