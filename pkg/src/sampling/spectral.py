"""Control measures μ with compact support and bounded density.

Three kinds are supported: uniform on a ball, uniform on a centred box, and a
product of tabulated one-dimensional densities.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import integrate
from scipy import special as sp

from ..exceptions import ConfigError
from .streams import RngStream

MeasureKind = Literal["uniform_ball", "uniform_box", "product_density"]


@dataclass(frozen=True, eq=False)
class MeasureMoments:
    """μ_0, normalised absolute moments μ_j = E|ω_j| and E[ω_i ω_j] under μ/μ_0."""

    mu0: float
    abs_first: tuple[float, ...]
    second: np.ndarray

    def to_dict(self) -> dict:
        return {
            "mu0": self.mu0,
            "abs_first": list(self.abs_first),
            "second": self.second.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    kind: MeasureKind
    total_mass: float
    dimension: int
    radius: float = 0.0
    half_widths: tuple[float, ...] = ()
    nodes: tuple[np.ndarray, ...] = field(default=())
    densities: tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.total_mass > 0.0:
            raise ConfigError(f"spectral measure needs positive total mass, got {self.total_mass}")
        if self.dimension < 1:
            raise ConfigError(f"spectral measure dimension must be >= 1, got {self.dimension}")

    # ----- constructors -----

    @classmethod
    def uniform_ball(cls, radius: float, dimension: int, total_mass: float = 1.0) -> "SpectralMeasure":
        if not radius > 0.0:
            raise ConfigError(f"ball radius must be positive, got {radius}")
        return cls("uniform_ball", total_mass, dimension, radius=float(radius))

    @classmethod
    def uniform_box(cls, half_widths: Sequence[float], total_mass: float = 1.0) -> "SpectralMeasure":
        widths = tuple(float(h) for h in half_widths)
        if not widths or any(not h > 0.0 for h in widths):
            raise ConfigError(f"box half-widths must be positive, got {widths}")
        return cls("uniform_box", total_mass, len(widths), half_widths=widths)

    @classmethod
    def product_density(
        cls,
        nodes: Sequence[Sequence[float]],
        densities: Sequence[Sequence[float]],
    ) -> "SpectralMeasure":
        """μ(dω) = ∏_i p_i(ω_i) dω with p_i tabulated on increasing nodes.

        The total mass is the product of the per-axis trapezoid integrals.
        """
        xs = tuple(np.asarray(x, dtype=float) for x in nodes)
        ps = tuple(np.asarray(p, dtype=float) for p in densities)
        if not xs or len(xs) != len(ps):
            raise ConfigError("product density needs one node array per density array")
        mass = 1.0
        for axis, (x, p) in enumerate(zip(xs, ps, strict=True)):
            if x.ndim != 1 or x.shape != p.shape or x.size < 2:
                raise ConfigError(f"axis {axis}: nodes and density must be 1-D of equal length >= 2")
            if np.any(np.diff(x) <= 0.0):
                raise ConfigError(f"axis {axis}: nodes must be strictly increasing")
            if not np.all(np.isfinite(p)) or np.any(p < 0.0):
                raise ConfigError(f"axis {axis}: density must be finite and non-negative")
            z = float(integrate.trapezoid(p, x))
            if not z > 0.0:
                raise ConfigError(f"axis {axis}: density is not integrable to a positive mass")
            mass *= z
        return cls("product_density", mass, len(xs), nodes=xs, densities=ps)

    # ----- geometry -----

    def support_radius(self) -> float:
        """Radius of a centred ball containing the support."""
        if self.kind == "uniform_ball":
            return self.radius
        if self.kind == "uniform_box":
            return math.hypot(*self.half_widths)
        return math.hypot(*(float(np.max(np.abs(x))) for x in self.nodes))

    def contains(self, omegas: np.ndarray) -> np.ndarray:
        omegas = np.atleast_2d(omegas)
        if self.kind == "uniform_ball":
            return np.linalg.norm(omegas, axis=1) <= self.radius
        if self.kind == "uniform_box":
            return np.all(np.abs(omegas) <= np.asarray(self.half_widths), axis=1)
        lo = np.array([x[0] for x in self.nodes])
        hi = np.array([x[-1] for x in self.nodes])
        return np.all((omegas >= lo) & (omegas <= hi), axis=1)

    def characteristic(self, t: np.ndarray) -> np.ndarray:
        """E cos⟨t, ω⟩ under μ/μ_0 for an array of lags with trailing axis N."""
        t = np.asarray(t, dtype=float)
        if t.shape[-1] != self.dimension:
            raise ConfigError(f"lags of dimension {t.shape[-1]} for a {self.dimension}-D measure")
        if self.kind == "uniform_ball":
            n = self.dimension
            r = self.radius * np.linalg.norm(t, axis=-1)
            safe = np.where(r == 0.0, 1.0, r)
            value = sp.gamma(n / 2.0 + 1.0) * (2.0 / safe) ** (n / 2.0) * sp.jv(n / 2.0, safe)
            return np.where(r == 0.0, 1.0, value)
        if self.kind == "uniform_box":
            value = np.ones(t.shape[:-1])
            for axis, h in enumerate(self.half_widths):
                value = value * np.sinc(h * t[..., axis] / np.pi)
            return value
        value = np.ones(t.shape[:-1], dtype=complex)
        for axis, (x, p) in enumerate(zip(self.nodes, self.densities, strict=True)):
            z = integrate.trapezoid(p, x)
            phase = np.exp(1j * t[..., axis, None] * x)
            value = value * integrate.trapezoid(phase * p, x, axis=-1) / z
        return value.real


def _linear_cell_offsets(p0: np.ndarray, p1: np.ndarray, width: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Offsets t in [0, width] with ∫_0^t p = v·mass for p linear from p0 to p1."""
    slope = (p1 - p0) / width
    target = v * 0.5 * (p0 + p1) * width
    den = p0 + np.sqrt(np.maximum(p0 * p0 + 2.0 * slope * target, 0.0))
    safe = np.where(den > 0.0, den, 1.0)
    return np.where(den > 0.0, 2.0 * target / safe, 0.0)


def sample_frequencies(mu: SpectralMeasure, count: int, stream: RngStream) -> np.ndarray:
    """``count`` i.i.d. draws from μ/μ_0 as a (count, N) array.

    Row i depends only on the stream and i: the first k rows of a larger
    request equal a request for k rows.
    """
    if count < 1:
        raise ConfigError(f"frequency count must be >= 1, got {count}")
    rng = stream.generator()
    n = mu.dimension
    if mu.kind == "uniform_ball":
        z = rng.standard_normal((count, n + 1))
        direction = z[:, :n]
        norms = np.linalg.norm(direction, axis=1, keepdims=True)
        norms = np.where(norms == 0.0, 1.0, norms)
        radius = mu.radius * sp.ndtr(z[:, n:]) ** (1.0 / n)
        return direction / norms * radius
    if mu.kind == "uniform_box":
        h = np.asarray(mu.half_widths)
        return rng.uniform(-1.0, 1.0, size=(count, n)) * h
    if mu.kind == "product_density":
        u = rng.random((count, n))
        out = np.empty((count, n))
        for axis, (x, p) in enumerate(zip(mu.nodes, mu.densities, strict=True)):
            width = np.diff(x)
            cell_mass = 0.5 * (p[1:] + p[:-1]) * width
            cdf = np.cumsum(cell_mass) / cell_mass.sum()
            cdf[-1] = 1.0
            cell = np.minimum(np.searchsorted(cdf, u[:, axis], side="right"), cdf.size - 1)
            lower = np.where(cell > 0, cdf[cell - 1], 0.0)
            span = cdf[cell] - lower
            v = np.divide(u[:, axis] - lower, span, out=np.zeros_like(span), where=span > 0.0)
            v = np.clip(v, 0.0, 1.0)
            out[:, axis] = x[cell] + _linear_cell_offsets(p[cell], p[cell + 1], width[cell], v)
        return out
    raise ConfigError(f"unsupported spectral measure kind {mu.kind!r}")


def measure_moments(mu: SpectralMeasure) -> MeasureMoments:
    """Closed-form moments for the uniform kinds, trapezoid quadrature for tables."""
    n = mu.dimension
    if mu.kind == "uniform_ball":
        r = mu.radius
        abs_first = (
            2.0 * r * sp.gamma(n / 2.0 + 1.0) / ((n + 1) * math.sqrt(math.pi) * sp.gamma((n + 1) / 2.0))
        )
        return MeasureMoments(
            mu0=mu.total_mass,
            abs_first=(float(abs_first),) * n,
            second=np.eye(n) * r * r / (n + 2.0),
        )
    if mu.kind == "uniform_box":
        h = np.asarray(mu.half_widths)
        return MeasureMoments(
            mu0=mu.total_mass,
            abs_first=tuple(float(v) for v in h / 2.0),
            second=np.diag(h * h / 3.0),
        )
    if mu.kind == "product_density":
        means, abs_means, squares = [], [], []
        for x, p in zip(mu.nodes, mu.densities, strict=True):
            z = integrate.trapezoid(p, x)
            means.append(float(integrate.trapezoid(x * p, x) / z))
            abs_means.append(float(integrate.trapezoid(np.abs(x) * p, x) / z))
            squares.append(float(integrate.trapezoid(x * x * p, x) / z))
        second = np.outer(means, means)
        np.fill_diagonal(second, squares)
        if not np.all(np.isfinite(second)):
            raise ConfigError("tabulated density has non-finite moments")
        return MeasureMoments(mu0=mu.total_mass, abs_first=tuple(abs_means), second=second)
    raise ConfigError(f"unsupported spectral measure kind {mu.kind!r}")
