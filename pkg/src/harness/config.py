"""Experiment definitions read from TOML.

One file describes one experiment: the field, the domain and its grid, the
levels, the number of replications and which predictions to compare against.
The schema is documented in docs/config-schema.md.
"""

import logging
import re
import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..exceptions import ConfigError
from ..fields import GaussianFieldSpec
from ..geomcore import Rectangle
from ..sampling import SpectralMeasure, default_truncation

logger = logging.getLogger(__name__)

FieldKind = Literal["gaussian", "sub_gaussian", "harmonisable", "concatenated"]
Measurement = Literal["ec", "lk", "upcrossings"]
Comparison = Literal["exact", "asymptotic", "conditional"]

SERIES_KINDS = ("harmonisable", "concatenated")
STABLE_KINDS = ("sub_gaussian", *SERIES_KINDS)

# Smallest accepted grid size per axis
MIN_RESOLUTION = 8


class MeasureSection(BaseModel):
    """Spectral (control) measure μ."""

    kind: Literal["uniform_ball", "uniform_box"] = Field(description="Measure family")
    total_mass: float = Field(default=1.0, description="μ_0", gt=0)
    radius: float | None = Field(default=None, description="Ball radius", gt=0)
    half_widths: list[float] | None = Field(default=None, description="Box half widths per axis")

    def build(self, dimension: int) -> SpectralMeasure:
        if self.kind == "uniform_ball":
            if self.radius is None:
                raise ConfigError("field.measure.radius is required for a uniform_ball measure")
            return SpectralMeasure.uniform_ball(self.radius, dimension, self.total_mass)
        if self.half_widths is None or len(self.half_widths) != dimension:
            raise ConfigError(f"field.measure.half_widths must list {dimension} values")
        return SpectralMeasure.uniform_box(self.half_widths, self.total_mass)


class FieldSection(BaseModel):
    """Random field law."""

    kind: FieldKind = Field(description="Field family")
    variance: float = Field(default=1.0, description="Variance of the Gaussian part", gt=0)
    covariance: Literal["squared_exponential", "spectral_measure"] = Field(
        default="squared_exponential", description="Covariance of the Gaussian part"
    )
    length_scale: float | None = Field(default=None, description="Squared-exponential length", gt=0)
    alpha: float | None = Field(default=None, description="Stable index", gt=0, lt=2)
    n_prime: int = Field(default=1, description="Wave pairs per stable weight", ge=1)
    truncation: int | None = Field(default=None, description="Series truncation K", ge=1)
    measure: MeasureSection | None = None

    @model_validator(mode="after")
    def _check_kind(self) -> "FieldSection":
        if self.kind in STABLE_KINDS and self.alpha is None:
            raise ValueError(f"alpha is required for {self.kind} fields")
        if self.kind in SERIES_KINDS and self.measure is None:
            raise ValueError(f"a [field.measure] table is required for {self.kind} fields")
        if self.kind in ("gaussian", "sub_gaussian"):
            if self.covariance == "squared_exponential" and self.length_scale is None:
                raise ValueError("length_scale is required for a squared_exponential covariance")
            if self.covariance == "spectral_measure" and self.measure is None:
                raise ValueError("a [field.measure] table is required for a spectral_measure covariance")
        if self.kind == "harmonisable" and self.n_prime != 1:
            raise ValueError("harmonisable fields have n_prime = 1; use kind = 'concatenated'")
        return self


class DomainSection(BaseModel):
    """Rectangle [0, T_1] × … × [0, T_N] and its vertex grid."""

    sides: list[float] = Field(description="Side lengths T_j", min_length=1)
    resolution: list[int] = Field(description="Grid nodes per axis", min_length=1)

    @model_validator(mode="after")
    def _check_shape(self) -> "DomainSection":
        if len(self.sides) != len(self.resolution):
            raise ValueError("sides and resolution must have the same length")
        if any(s <= 0 for s in self.sides):
            raise ValueError("side lengths must be positive")
        if any(r < MIN_RESOLUTION for r in self.resolution):
            raise ValueError(f"resolution must be at least {MIN_RESOLUTION} per axis")
        return self


class PredictionSection(BaseModel):
    """Monte Carlo budgets of the theory side."""

    conditional_draws: int = Field(default=10_000, description="Provenance draws for the conditional predictor", ge=2)
    conditional_seed: int | None = Field(default=None, description="Seed of those draws (default master_seed + 1)")
    lambda_draws: int = Field(default=100_000, description="Draws for the Λ(J) estimates", ge=2)
    truncation_sensitivity: bool = Field(default=True, description="Rerun series fields at 2K")


class ExperimentConfig(BaseModel):
    """A complete experiment."""

    name: str = Field(default="experiment", description="Label used in logs and reports")
    master_seed: int = Field(default=0, description="Seed of every replicate stream", ge=0)
    replications: int = Field(description="Number of independent replicates", ge=1)
    levels: list[float] = Field(description="Excursion levels u", min_length=1)
    measurements: list[Measurement] = Field(default_factory=lambda: ["ec"])
    compare: list[Comparison] = Field(default_factory=lambda: ["exact", "asymptotic"])
    field: FieldSection
    domain: DomainSection
    predictions: PredictionSection = Field(default_factory=PredictionSection)

    @model_validator(mode="after")
    def _check_cross(self) -> "ExperimentConfig":
        n = len(self.domain.sides)
        if "upcrossings" in self.measurements and n != 1:
            raise ValueError("upcrossings are only measured for one-dimensional domains")
        if "lk" in self.measurements and n > 3:
            raise ValueError("lk estimates support dimensions up to 3")
        if self.field.kind == "concatenated" and self.field.n_prime > n:
            raise ValueError(f"n_prime must not exceed the dimension {n}")
        return self

    # ----- builders -----

    @property
    def dimension(self) -> int:
        return len(self.domain.sides)

    def rectangle(self) -> Rectangle:
        return Rectangle(tuple(self.domain.sides))

    def resolution(self) -> tuple[int, ...]:
        return tuple(self.domain.resolution)

    def measure(self) -> SpectralMeasure | None:
        if self.field.measure is None:
            return None
        return self.field.measure.build(self.dimension)

    def gaussian_spec(self) -> GaussianFieldSpec:
        """Law of the Gaussian part of a gaussian or sub_gaussian field."""
        f = self.field
        if f.covariance == "squared_exponential":
            return GaussianFieldSpec.squared_exponential(f.variance, f.length_scale, self.dimension)
        return GaussianFieldSpec.from_spectral_measure(f.variance, self.measure())

    def truncation(self, cap: int) -> int:
        """K from the file, else the default rule capped at ``cap``."""
        if self.field.truncation is not None:
            return self.field.truncation
        return default_truncation(self.field.alpha, cap=cap)

    def with_overrides(
        self, master_seed: int | None = None, levels: list[float] | None = None
    ) -> "ExperimentConfig":
        update: dict[str, Any] = {}
        if master_seed is not None:
            update["master_seed"] = master_seed
        if levels is not None:
            if not levels:
                raise ConfigError("levels must not be empty")
            update["levels"] = list(levels)
        return self.model_copy(update=update)


# ===== Loading =====

_TABLE_RE = re.compile(r"^\s*\[\s*([A-Za-z0-9_.\s]+?)\s*\]\s*(#.*)?$")
_KEY_RE = re.compile(r"^\s*([A-Za-z0-9_]+)\s*=")


def _locate(text: str, loc: tuple[Any, ...]) -> int | None:
    """1-based line of the key a validation error points at, if it can be found."""
    keys = [str(part) for part in loc if isinstance(part, str)]
    if not keys:
        return None
    table, key = ".".join(keys[:-1]), keys[-1]
    current = ""
    table_line = None
    for number, line in enumerate(text.splitlines(), start=1):
        header = _TABLE_RE.match(line)
        if header:
            current = header.group(1).replace(" ", "")
            if current == ".".join(keys):
                table_line = number
            continue
        match = _KEY_RE.match(line)
        if match and current == table and match.group(1) == key:
            return number
    return table_line


def parse_experiment_config(text: str) -> ExperimentConfig:
    """Parse and validate TOML text.

    Raises:
        ConfigError: with the offending line when it can be located
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(
            f"malformed TOML: {getattr(e, 'msg', e)}", line=getattr(e, "lineno", None)
        ) from e
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise ConfigError(f"{where}: {first['msg']}", line=_locate(text, first["loc"])) from e


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Read an experiment file from disk."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    config = parse_experiment_config(text)
    logger.debug(f"Loaded experiment '{config.name}' from {path}")
    return config
