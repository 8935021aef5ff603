"""Stationary Gaussian fields by circulant embedding.

Small grids (fewer than DENSE_NODE_LIMIT nodes) use a dense Cholesky factor
of the covariance matrix instead.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import fft, linalg

from ..exceptions import DegenerateSpecError, DomainError, PreconditionError, SimulationError
from ..geomcore import Rectangle
from ..sampling import RngStream, SpectralMeasure, measure_moments
from .grid import FieldGrid, Provenance

logger = logging.getLogger(__name__)

DENSE_NODE_LIMIT = 4096
# Relative size of negative circulant eigenvalues tolerated (and clipped to zero)
EIGEN_TOLERANCE = 1e-8
MAX_PADDING_DOUBLINGS = 3

CovarianceKind = Literal["squared_exponential", "from_spectral_measure"]


@dataclass(frozen=True, eq=False)
class GaussianFieldSpec:
    """Zero-mean stationary Gaussian field with variance σ² and spectral moments λ_ij."""

    variance: float
    spectral_moments: np.ndarray
    covariance_kind: CovarianceKind = "squared_exponential"
    length_scale: float | None = None
    measure: SpectralMeasure | None = field(default=None)

    def __post_init__(self) -> None:
        if not self.variance > 0.0:
            raise DomainError(f"variance must be positive, got {self.variance}")
        lam = np.atleast_2d(np.asarray(self.spectral_moments, dtype=float))
        if lam.shape[0] != lam.shape[1] or not np.allclose(lam, lam.T):
            raise DegenerateSpecError("spectral moment matrix must be square and symmetric")
        if np.linalg.eigvalsh(lam).min() <= 0.0:
            raise DegenerateSpecError("spectral moment matrix must be positive definite")
        if self.covariance_kind == "squared_exponential" and not (
            self.length_scale and self.length_scale > 0.0
        ):
            raise DomainError("squared_exponential covariance needs a positive length scale")
        if self.covariance_kind == "from_spectral_measure" and self.measure is None:
            raise DomainError("from_spectral_measure covariance needs a spectral measure")
        lam.setflags(write=False)
        object.__setattr__(self, "spectral_moments", lam)

    @classmethod
    def squared_exponential(cls, variance: float, length: float, dimension: int) -> "GaussianFieldSpec":
        """C(t) = σ² exp(-|t|²/2ℓ²), so λ_ij = (σ²/ℓ²) δ_ij."""
        return cls(
            variance=variance,
            spectral_moments=np.eye(dimension) * variance / length**2,
            covariance_kind="squared_exponential",
            length_scale=length,
        )

    @classmethod
    def from_spectral_measure(cls, variance: float, mu: SpectralMeasure) -> "GaussianFieldSpec":
        """C(t) = σ² E cos⟨t, ω⟩ for ω ~ μ/μ_0, so λ = σ² E[ω ωᵀ]."""
        moments = measure_moments(mu)
        return cls(
            variance=variance,
            spectral_moments=variance * moments.second,
            covariance_kind="from_spectral_measure",
            measure=mu,
        )

    @property
    def dimension(self) -> int:
        return self.spectral_moments.shape[0]

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    def is_isotropic(self) -> bool:
        lam = self.spectral_moments
        return bool(np.allclose(lam, lam[0, 0] * np.eye(self.dimension)))

    def covariance(self, lags: np.ndarray) -> np.ndarray:
        """C(t) for an array of lags with trailing axis N."""
        lags = np.asarray(lags, dtype=float)
        if self.covariance_kind == "squared_exponential":
            sq = np.sum(lags * lags, axis=-1)
            return self.variance * np.exp(-sq / (2.0 * self.length_scale**2))
        return self.variance * self.measure.characteristic(lags)

    def to_dict(self) -> dict:
        return {
            "variance": self.variance,
            "spectral_moments": self.spectral_moments.tolist(),
            "covariance_kind": self.covariance_kind,
            "length_scale": self.length_scale,
        }


def _check_resolution(spec: GaussianFieldSpec, rect: Rectangle, resolution: tuple[int, ...]) -> None:
    if rect.dimension != spec.dimension:
        raise DomainError(f"{spec.dimension}-D spec on a {rect.dimension}-D rectangle")
    if len(resolution) != rect.dimension or any(r < 2 for r in resolution):
        raise DomainError(f"resolution {resolution} does not fit a {rect.dimension}-D rectangle")
    if spec.covariance_kind == "squared_exponential":
        spacing = max(t / (n - 1) for t, n in zip(rect.side_lengths, resolution, strict=True))
        if spacing > spec.length_scale / 4.0:
            raise PreconditionError(
                f"grid spacing {spacing:.4g} does not resolve length scale {spec.length_scale:.4g}"
            )


def _dense_sample(
    spec: GaussianFieldSpec, rect: Rectangle, resolution: tuple[int, ...], rng: np.random.Generator
) -> np.ndarray:
    axes = [np.linspace(0.0, t, n) for t, n in zip(rect.side_lengths, resolution, strict=True)]
    points = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, rect.dimension)
    cov = spec.covariance(points[:, None, :] - points[None, :, :])
    z = rng.standard_normal(points.shape[0])
    for jitter in (0.0, 1e-12, 1e-10, 1e-8):
        try:
            factor = linalg.cholesky(cov + jitter * spec.variance * np.eye(len(cov)), lower=True)
            return (factor @ z).reshape(resolution)
        except linalg.LinAlgError:
            continue
    # Smooth kernels on fine grids are numerically singular; fall back to a clipped eigen-factor
    eigval, eigvec = linalg.eigh(cov)
    factor = eigvec * np.sqrt(np.clip(eigval, 0.0, None))
    return (factor @ z).reshape(resolution)


def _circulant_eigenvalues(
    spec: GaussianFieldSpec, spacing: tuple[float, ...], sizes: tuple[int, ...]
) -> np.ndarray:
    lag_axes = []
    for h, m in zip(spacing, sizes, strict=True):
        k = np.arange(m)
        lag_axes.append(np.minimum(k, m - k) * h)
    lags = np.stack(np.meshgrid(*lag_axes, indexing="ij"), axis=-1)
    return fft.fftn(spec.covariance(lags)).real


def _circulant_sample(
    spec: GaussianFieldSpec, rect: Rectangle, resolution: tuple[int, ...], rng: np.random.Generator
) -> np.ndarray:
    spacing = tuple(t / (n - 1) for t, n in zip(rect.side_lengths, resolution, strict=True))
    sizes = tuple(fft.next_fast_len(2 * (n - 1)) for n in resolution)
    for _ in range(MAX_PADDING_DOUBLINGS + 1):
        eig = _circulant_eigenvalues(spec, spacing, sizes)
        worst = float(eig.min())
        if worst >= -EIGEN_TOLERANCE * float(eig.max()):
            break
        logger.debug(f"Circulant embedding {sizes} has eigenvalue {worst:.3g}; padding further")
        sizes = tuple(fft.next_fast_len(2 * m) for m in sizes)
    else:
        raise SimulationError(
            "covariance is not embeddable in a nonnegative circulant",
            diagnostics={"min_eigenvalue": worst, "max_eigenvalue": float(eig.max()), "sizes": sizes},
        )

    total = math.prod(sizes)
    amplitude = np.sqrt(np.clip(eig, 0.0, None) / total)
    noise = rng.standard_normal(sizes) + 1j * rng.standard_normal(sizes)
    field_full = fft.fftn(amplitude * noise).real
    return field_full[tuple(slice(0, n) for n in resolution)].copy()


def gaussian_values(
    spec: GaussianFieldSpec, rect: Rectangle, resolution: tuple[int, ...], rng: np.random.Generator
) -> np.ndarray:
    """One realization on the grid as an array of shape ``resolution``."""
    resolution = tuple(int(r) for r in resolution)
    _check_resolution(spec, rect, resolution)
    if math.prod(resolution) < DENSE_NODE_LIMIT:
        return _dense_sample(spec, rect, resolution, rng)
    return _circulant_sample(spec, rect, resolution, rng)


def simulate_gaussian(
    spec: GaussianFieldSpec,
    rect: Rectangle,
    resolution: tuple[int, ...],
    stream: RngStream,
) -> FieldGrid:
    """Zero-mean stationary Gaussian realization with the covariance of ``spec``."""
    values = gaussian_values(spec, rect, resolution, stream.generator())
    return FieldGrid(
        rectangle=rect,
        resolution=tuple(resolution),
        values=values,
        provenance=Provenance(
            field_kind="gaussian",
            master_seed=stream.master_seed,
            stream_index=stream.stream_index,
            spec=spec.to_dict(),
        ),
    )
