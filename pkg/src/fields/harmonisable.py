"""Harmonisable and concatenated-harmonisable SαS fields.

Both are simulated from the truncated series

    f(t) = γ_α Σ_{k≤K} Γ_k^{-1/α} Σ_{ℓ≤N'} (G1_{kℓ} cos⟨t, ω_{kℓ}⟩ + G2_{kℓ} sin⟨t, ω_{kℓ}⟩)

evaluated exactly at the grid nodes. N' = 1 is the harmonisable field and
shares its draws and summation order with the concatenated code path. Term k
uses the same arrival, frequencies and coefficients whatever K is, so the
series at 2K extends the series at K.
"""

import math
import string
from dataclasses import dataclass

import numpy as np

from ..exceptions import DegenerateSpecError, DomainError, PreconditionError
from ..geomcore import Rectangle
from ..sampling import (
    MeasureMoments,
    RngStream,
    SpectralMeasure,
    sample_arrivals,
    sample_frequencies,
)
from ..special import stable_constants
from .grid import FieldGrid, Provenance

ARRIVAL_STREAM = 0
FREQUENCY_STREAM = 1
COEFFICIENT_STREAM = 2

# Terms per evaluation chunk; bounds the (chunk × nodes-per-axis) phase arrays
_CHUNK = 256


def gamma_alpha(alpha: float, mu0: float) -> float:
    """γ_α = (C_α μ_0 / b_α)^{1/α}."""
    consts = stable_constants(alpha)
    return (consts.c_alpha * mu0 / consts.b_alpha) ** (1.0 / alpha)


@dataclass(frozen=True, eq=False)
class ConditionedGaussianSpec:
    """Law of the field given its arrivals and frequencies: Gaussian with σ̃², λ̃."""

    sigma_tilde_sq: float
    lambda_tilde: np.ndarray
    gamma_alpha: float

    def __post_init__(self) -> None:
        if not self.sigma_tilde_sq > 0.0:
            raise DegenerateSpecError(f"conditional variance must be positive, got {self.sigma_tilde_sq}")
        lam = np.atleast_2d(np.asarray(self.lambda_tilde, dtype=float))
        if not np.allclose(lam, lam.T):
            raise DegenerateSpecError("conditional spectral matrix must be symmetric")
        object.__setattr__(self, "lambda_tilde", lam)

    @property
    def dimension(self) -> int:
        return self.lambda_tilde.shape[0]


def _evaluate_series(
    coefficients: np.ndarray, omegas: np.ndarray, axes: list[np.ndarray]
) -> np.ndarray:
    """Re Σ_m c_m exp(i⟨t, ω_m⟩) on the tensor grid spanned by ``axes``."""
    n = len(axes)
    letters = string.ascii_lowercase[1 : n + 1]
    subscripts = "z," + ",".join(f"z{c}" for c in letters) + "->" + letters
    out = np.zeros(tuple(a.size for a in axes))
    for start in range(0, coefficients.size, _CHUNK):
        stop = start + _CHUNK
        c = coefficients[start:stop]
        phases = [np.exp(1j * np.outer(omegas[start:stop, d], axes[d])) for d in range(n)]
        out += np.einsum(subscripts, c, *phases, optimize="greedy").real
    return out


def _simulate_series(
    mu: SpectralMeasure,
    alpha: float,
    n_prime: int,
    k: int,
    rect: Rectangle,
    resolution: tuple[int, ...],
    stream: RngStream,
    field_kind: str,
) -> FieldGrid:
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"stable index must lie in (0, 2), got {alpha}")
    if k < 1:
        raise DomainError(f"truncation K must be >= 1, got {k}")
    if mu.dimension != rect.dimension:
        raise DomainError(f"{mu.dimension}-D measure on a {rect.dimension}-D rectangle")

    scale = gamma_alpha(alpha, mu.total_mass)
    arrivals = sample_arrivals(k, stream.child(ARRIVAL_STREAM))
    omegas = sample_frequencies(mu, k * n_prime, stream.child(FREQUENCY_STREAM))
    # (G1, G2) of term k sit in row k, so a longer series extends a shorter one
    normals = stream.child(COEFFICIENT_STREAM).generator().standard_normal((k, n_prime, 2))

    weights = scale * arrivals.weights(alpha)[:, None]
    coefficients = (weights * (normals[..., 0] - 1j * normals[..., 1])).reshape(-1)

    axes = [np.linspace(0.0, t, n) for t, n in zip(rect.side_lengths, resolution, strict=True)]
    values = _evaluate_series(coefficients, omegas, axes)
    return FieldGrid(
        rectangle=rect,
        resolution=tuple(resolution),
        values=values,
        provenance=Provenance(
            field_kind=field_kind,
            master_seed=stream.master_seed,
            stream_index=stream.stream_index,
            alpha=alpha,
            truncation=k,
            n_prime=n_prime,
            gamma_alpha=scale,
            gammas=arrivals.gammas.copy(),
            omegas=omegas.reshape(k, n_prime, mu.dimension),
            spec={"measure_kind": mu.kind, "mu0": mu.total_mass},
        ),
    )


def simulate_harmonisable(
    mu: SpectralMeasure,
    alpha: float,
    k: int,
    rect: Rectangle,
    resolution: tuple[int, ...],
    stream: RngStream,
) -> FieldGrid:
    """Harmonisable SαS field from its series truncated at K terms."""
    return _simulate_series(mu, alpha, 1, k, rect, resolution, stream, "harmonisable")


def simulate_concatenated(
    mu: SpectralMeasure,
    alpha: float,
    n_prime: int,
    k: int,
    rect: Rectangle,
    resolution: tuple[int, ...],
    stream: RngStream,
) -> FieldGrid:
    """Concatenated-harmonisable field with N' wave pairs per stable weight."""
    if not 1 <= n_prime <= rect.dimension:
        raise DomainError(f"n_prime must lie in [1, {rect.dimension}], got {n_prime}")
    kind = "harmonisable" if n_prime == 1 else "concatenated"
    return _simulate_series(mu, alpha, n_prime, k, rect, resolution, stream, kind)


def conditioned_from_draws(
    alpha: float, scale: float, gammas: np.ndarray, omegas: np.ndarray
) -> ConditionedGaussianSpec:
    """σ̃² = γ² N' Σ Γ_k^{-2/α} and λ̃ = γ² Σ_k Γ_k^{-2/α} Σ_ℓ ω_{kℓ} ω_{kℓ}ᵀ.

    ``omegas`` has shape (K, N', N).
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim == 2:
        omegas = omegas[:, None, :]
    w = np.asarray(gammas, dtype=float) ** (-2.0 / alpha)
    n_prime = omegas.shape[1]
    lam = scale**2 * np.einsum("k,kli,klj->ij", w, omegas, omegas)
    return ConditionedGaussianSpec(
        sigma_tilde_sq=scale**2 * n_prime * float(w.sum()),
        lambda_tilde=lam,
        gamma_alpha=scale,
    )


def conditioned_spec(
    provenance: Provenance, mu_moments: MeasureMoments | None = None
) -> ConditionedGaussianSpec:
    """Conditional Gaussian law of a harmonisable or concatenated realization.

    Raises:
        PreconditionError: if the provenance lacks arrivals or frequencies
    """
    if provenance is None or provenance.gammas is None or provenance.omegas is None:
        raise PreconditionError("provenance does not record arrival and frequency draws")
    if provenance.alpha is None or provenance.gamma_alpha is None:
        raise PreconditionError("provenance does not record the stable index")
    if mu_moments is not None and not math.isclose(
        provenance.spec.get("mu0", mu_moments.mu0), mu_moments.mu0
    ):
        raise PreconditionError("moments belong to a different control measure")
    return conditioned_from_draws(
        provenance.alpha, provenance.gamma_alpha, provenance.gammas, provenance.omegas
    )
