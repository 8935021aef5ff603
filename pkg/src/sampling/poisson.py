"""Arrival times of a unit-rate Poisson process and the series truncation rule."""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError
from .streams import RngStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ArrivalSequence:
    """Γ_1 < Γ_2 < ... < Γ_K."""

    gammas: np.ndarray
    truncation: int

    def __post_init__(self) -> None:
        g = np.asarray(self.gammas, dtype=float)
        if g.ndim != 1 or g.size != self.truncation or g.size == 0:
            raise DomainError("arrival sequence length must equal its truncation K >= 1")
        if g[0] <= 0.0 or np.any(np.diff(g) <= 0.0):
            raise DomainError("arrival times must be positive and strictly increasing")
        g.setflags(write=False)
        object.__setattr__(self, "gammas", g)

    def weights(self, alpha: float) -> np.ndarray:
        """Γ_k^{-1/α}."""
        return self.gammas ** (-1.0 / alpha)


def sample_arrivals(k: int, stream: RngStream) -> ArrivalSequence:
    """Cumulative sums of K i.i.d. unit exponentials."""
    if k < 1:
        raise DomainError(f"truncation K must be >= 1, got {k}")
    rng = stream.generator()
    steps = rng.standard_exponential(size=k)
    steps = np.maximum(steps, np.finfo(float).tiny)
    return ArrivalSequence(gammas=np.cumsum(steps), truncation=k)


def default_truncation(alpha: float, rel_tol: float = 1e-4, cap: int = 10_000) -> int:
    """Smallest power of two K whose tail Σ_{k>K} k^{-2/α} is below rel_tol times the head sum.

    The tail is bounded by the integral K^{1-2/α}/(2/α - 1). For α close to 2
    the rule asks for astronomically many terms; the result is capped.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    p = 2.0 / alpha
    k = 1
    while k < cap:
        head = float(np.sum(np.arange(1, k + 1, dtype=float) ** (-p)))
        tail = k ** (1.0 - p) / (p - 1.0)
        if tail < rel_tol * head:
            return k
        k *= 2
    logger.warning(f"Truncation rule for alpha={alpha} exceeds cap; using K={cap}")
    return cap
