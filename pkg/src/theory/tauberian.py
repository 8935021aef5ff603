"""Tail limits of Gaussian functionals mixed by a one-sided stable variance.

For X positive (α/2)-stable with P{X > v} ~ c v^{-α/2} these give the
limits of u^{α} E{...} as u → ∞ that drive every sub-Gaussian asymptote.
"""

import math

from scipy import special as sp

from ..exceptions import DomainError
from ..special import stable_constants


def _check(alpha: float, sigma: float) -> None:
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if not sigma > 0.0:
        raise DomainError(f"scale must be positive, got {sigma}")


def tauberian_limit(alpha: float, beta: float, sigma_g: float, tail_const: float | None = None) -> float:
    """lim u^{α} E{u^{β} X^{-β/2} e^{-u²/(2Xσ²)}} = 2^{(α+β-2)/2} α c σ^{α+β} Γ((α+β)/2)."""
    _check(alpha, sigma_g)
    if not beta > -alpha:
        raise DomainError(f"beta must exceed -alpha = {-alpha}, got {beta}")
    c = stable_constants(alpha).tail_const if tail_const is None else tail_const
    return (
        2.0 ** ((alpha + beta - 2.0) / 2.0)
        * alpha
        * c
        * sigma_g ** (alpha + beta)
        * float(sp.gamma((alpha + beta) / 2.0))
    )


def psi_tauberian_limit(alpha: float, sigma_g: float, tail_const: float | None = None) -> float:
    """lim u^{α} E Ψ(u/(√X σ)) = 2^{α/2-1} π^{-1/2} c σ^{α} Γ((1+α)/2)."""
    _check(alpha, sigma_g)
    c = stable_constants(alpha).tail_const if tail_const is None else tail_const
    return (
        2.0 ** (alpha / 2.0 - 1.0)
        / math.sqrt(math.pi)
        * c
        * sigma_g**alpha
        * float(sp.gamma((1.0 + alpha) / 2.0))
    )


def lemma_last_limit(
    alpha: float, n: int, beta: float, gamma: float, tail_const: float | None = None
) -> float:
    """lim u^{α} E{u^{2β-n} X^{-β} e^{-u²/(2γ²X)}} for β > n/2.

    Equals α 2^{(α+2β-n-2)/2} c γ^{α+2β-n} Γ(β+(α-n)/2); at n = 0 this is
    tauberian_limit with β replaced by 2β.
    """
    _check(alpha, gamma)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if not beta > n / 2.0:
        raise DomainError(f"beta must exceed n/2 = {n / 2.0}, got {beta}")
    c = stable_constants(alpha).tail_const if tail_const is None else tail_const
    return (
        alpha
        * 2.0 ** ((alpha + 2.0 * beta - n - 2.0) / 2.0)
        * c
        * gamma ** (alpha + 2.0 * beta - n)
        * float(sp.gamma(beta + (alpha - n) / 2.0))
    )
