"""Numerical access to the one-sided stable law with Laplace transform e^{-t^a}.

Its density has no closed form except at a = 1/2. Both helpers below use the
Zolotarev/Kanter integral representation

    X = (A(φ) / W)^{(1-a)/a},   φ ~ U(0, π), W ~ Exp(1),
    A(φ) = sin(aφ)^{a/(1-a)} sin((1-a)φ) / sin(φ)^{1/(1-a)},

which turns E h(X) into a smooth double integral over (φ, log W).
"""

import logging
import math
from typing import Callable

import numpy as np
from scipy import integrate

from ..exceptions import DomainError, QuadratureError

logger = logging.getLogger(__name__)

# Integration window in t = log W; e^{t - e^t} is below 1e-21 outside it
_T_LOW = -50.0
_T_HIGH = 4.0


def _check_index(index: float) -> None:
    if not 0.0 < index < 1.0:
        raise DomainError(f"positive stable index must lie in (0, 1), got {index}")


def kanter_a(phi: np.ndarray | float, index: float) -> np.ndarray | float:
    """Zolotarev's A(φ) for the one-sided stable law of the given index."""
    a = index
    return (
        np.sin(a * phi) ** (a / (1.0 - a))
        * np.sin((1.0 - a) * phi)
        / np.sin(phi) ** (1.0 / (1.0 - a))
    )


def kanter_log_a(phi: float, index: float) -> float:
    """log A(φ), evaluated in log space so φ near π does not overflow."""
    a = index
    return (
        a / (1.0 - a) * math.log(math.sin(a * phi))
        + math.log(math.sin((1.0 - a) * phi))
        - math.log(math.sin(phi)) / (1.0 - a)
    )


def _quad(func: Callable[[float], float], lo: float, hi: float, limit: int, **kwargs) -> float:
    result = integrate.quad(func, lo, hi, limit=limit, epsabs=1e-14, epsrel=1e-8, full_output=1, **kwargs)
    if len(result) == 4:
        raise QuadratureError(
            "adaptive quadrature did not converge",
            diagnostics={"estimate": result[0], "abserr": result[1], "message": result[3]},
        )
    return float(result[0])


def positive_stable_pdf(x: float, index: float, limit: int = 200) -> float:
    """Density of X with E e^{-tX} = e^{-t^index} at x > 0."""
    _check_index(index)
    if x <= 0.0:
        return 0.0
    a = index
    power = x ** (-a / (1.0 - a))

    def integrand(phi: float) -> float:
        log_amp = kanter_log_a(phi, a)
        if log_amp > 700.0:
            return 0.0
        amp = math.exp(log_amp)
        return amp * math.exp(-amp * power)

    inner = _quad(integrand, 0.0, math.pi, limit)
    return a / (1.0 - a) * x ** (-1.0 / (1.0 - a)) * inner / math.pi


def positive_stable_expectation(
    h: Callable[[float], float],
    index: float,
    scale_hint: float | None = None,
    limit: int = 200,
) -> float:
    """E h(X) for bounded h by quadrature over the Kanter representation.

    Args:
        h: function of x > 0
        index: stable index a in (0, 1)
        scale_hint: value of X around which h changes fastest (e.g. u²)
        limit: subdivision limit for each adaptive quadrature

    Raises:
        QuadratureError: if either quadrature fails to reach tolerance
    """
    _check_index(index)
    a = index
    exponent = (1.0 - a) / a

    def inner(phi: float) -> float:
        log_amp = kanter_log_a(phi, a)
        lo, hi = _T_LOW, _T_HIGH
        points = None
        if scale_hint is not None and scale_hint > 0.0:
            t_star = log_amp - math.log(scale_hint) / exponent
            lo = min(lo, t_star - 30.0)
            if lo < t_star < hi:
                points = [t_star]

        def integrand(t: float) -> float:
            x = math.exp(min(exponent * (log_amp - t), 700.0))
            return h(x) * math.exp(t - math.exp(t))

        return _quad(integrand, lo, hi, limit, points=points)

    return _quad(inner, 0.0, math.pi, limit) / math.pi
