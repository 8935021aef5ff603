"""α-dependent constants shared by the stable-field formulas."""

import math
from dataclasses import dataclass

from scipy import special as sp

from ..exceptions import DomainError

# Below this distance from 1 the C-function is evaluated at its limit 2/π
C_ALPHA_BRANCH = 1e-9


def c_function(alpha: float) -> float:
    """C_α = (Γ(1-α) cos(πα/2))^{-1}, continuous through α = 1 where it is 2/π."""
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if abs(alpha - 1.0) < C_ALPHA_BRANCH:
        return 2.0 / math.pi
    return float(1.0 / (sp.gamma(1.0 - alpha) * math.cos(math.pi * alpha / 2.0)))


@dataclass(frozen=True)
class StableConstants:
    """Constants attached to a stable index α.

    tail_const is C_{α/2} σ_α^{α/2}: the constant in P{X > v} ~ tail_const v^{-α/2}
    for the positive α/2-stable X with Laplace transform e^{-t^{α/2}}.
    """

    alpha: float
    c_alpha: float
    b_alpha: float
    sigma_alpha: float
    tail_const: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 2.0:
            raise DomainError(f"stable index must lie in (0, 2), got {self.alpha}")
        for name in ("c_alpha", "b_alpha", "sigma_alpha", "tail_const"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive for alpha={self.alpha}")


def stable_constants(alpha: float) -> StableConstants:
    """Evaluate C_α, b_α = 2^{α/2} Γ(1+α/2), σ_α = cos(πα/4)^{2/α} and the tail constant.

    Raises:
        DomainError: if alpha is outside (0, 2)
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    sigma_alpha = math.cos(math.pi * alpha / 4.0) ** (2.0 / alpha)
    return StableConstants(
        alpha=alpha,
        c_alpha=c_function(alpha),
        b_alpha=float(2.0 ** (alpha / 2.0) * sp.gamma(1.0 + alpha / 2.0)),
        sigma_alpha=sigma_alpha,
        tail_const=c_function(alpha / 2.0) * sigma_alpha ** (alpha / 2.0),
    )


# P{Γ_1^{-2/α} > v} ~ v^{-α/2}: the Poisson-series sum Σ Γ_k^{-2/α} has unit tail constant
SERIES_TAIL_CONST = 1.0
