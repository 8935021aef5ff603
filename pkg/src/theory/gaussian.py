"""Expected Euler characteristic and LK curvatures of Gaussian excursion sets."""

import math
from collections.abc import Callable, Mapping, Sequence

import numpy as np

from ..exceptions import DegenerateSpecError, DomainError, InputError
from ..fields import GaussianFieldSpec
from ..geomcore import Rectangle, facets_containing_origin
from ..special import flag_coeff, rho

FacetDets = Mapping[tuple[int, ...], float]


def facet_sqrt_dets(lam: np.ndarray, rect: Rectangle, allow_singular: bool = False) -> dict[tuple[int, ...], float]:
    """|det Λ_J|^{1/2} for every facet J of T through the origin (Λ_∅ has det 1).

    Raises:
        DegenerateSpecError: for a singular Λ_J unless ``allow_singular``
    """
    lam = np.atleast_2d(np.asarray(lam, dtype=float))
    if lam.shape != (rect.dimension, rect.dimension):
        raise InputError(f"spectral matrix of shape {lam.shape} for a {rect.dimension}-D rectangle")
    dets: dict[tuple[int, ...], float] = {(): 1.0}
    for n in range(1, rect.dimension + 1):
        for facet in facets_containing_origin(rect, n):
            sub = lam[np.ix_(facet.axes, facet.axes)]
            det = float(np.linalg.det(sub))
            if det <= 0.0 and not allow_singular:
                raise DegenerateSpecError(f"Λ_J is singular on facet axes {facet.axes}")
            dets[facet.axes] = math.sqrt(abs(det))
    return dets


def ec_weights(sigma: float, rect: Rectangle, dets: FacetDets) -> list[float]:
    """a_n = σ^{-n} Σ_{J∈O_n} |J| |det Λ_J|^{1/2}, so E φ = Σ_n a_n ρ_n(u/σ)."""
    weights = []
    for n in range(rect.dimension + 1):
        total = 0.0
        for facet in facets_containing_origin(rect, n):
            if facet.axes not in dets:
                raise InputError(f"missing determinant for facet axes {facet.axes}")
            total += facet.measure * dets[facet.axes]
        weights.append(total / sigma**n)
    return weights


def ec_evaluator(sigma: float, rect: Rectangle, dets: FacetDets) -> Callable[[float], float]:
    """u ↦ Σ_n a_n ρ_n(u/σ), with the facet sums done once."""
    weights = ec_weights(sigma, rect, dets)

    def evaluate(u: float) -> float:
        x = u / sigma
        return sum(a * rho(n, x) for n, a in enumerate(weights) if a != 0.0 or n == 0)

    return evaluate


def gaussian_mean_ec(spec: GaussianFieldSpec, rect: Rectangle, u: float) -> float:
    """E φ(A_u(f, T)) for a stationary Gaussian field on a rectangle."""
    dets = facet_sqrt_dets(spec.spectral_moments, rect)
    return ec_evaluator(spec.sigma, rect, dets)(u)


def gaussian_isotropic_coefficients(sigma: float, lambda2: float, n: int, u: float) -> list[float]:
    """C_k(u) = ρ_k(u/σ) (λ_2/σ²)^{k/2}: the weight of ℒ_k(M) in E φ(A_u)."""
    if not lambda2 > 0.0:
        raise DomainError(f"lambda2 must be positive, got {lambda2}")
    return [rho(k, u / sigma) * (lambda2 / sigma**2) ** (k / 2.0) for k in range(n + 1)]


def gaussian_mean_lk_isotropic(
    sigma: float,
    lambda2: float,
    lks_of_m: Sequence[float],
    j: int,
    u: float,
    metric: str = "euclidean",
) -> float:
    """E ℒ_j(A_u) = Σ_n [n+j n] ℒ_{n+j}(M) ρ_n(u/σ) (λ_2/σ²)^{n/2}.

    With ``metric="induced"`` the curvatures are measured in the metric of the
    field's derivatives and the power becomes (n+j)/2.
    """
    n_dim = len(lks_of_m) - 1
    if not 0 <= j <= n_dim:
        raise DomainError(f"LK index must lie in [0, {n_dim}], got {j}")
    if not lambda2 > 0.0:
        raise DomainError(f"lambda2 must be positive, got {lambda2}")
    if metric not in ("euclidean", "induced"):
        raise DomainError(f"unknown metric {metric!r}")
    ratio = lambda2 / sigma**2
    total = 0.0
    for n in range(n_dim - j + 1):
        power = (n + j) / 2.0 if metric == "induced" else n / 2.0
        total += flag_coeff(n + j, n) * lks_of_m[n + j] * rho(n, u / sigma) * ratio**power
    return total
