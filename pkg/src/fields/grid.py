"""Sampled field realizations and the binary grid file format.

A grid file is one JSON header line (dimensions, rectangle, provenance)
followed by the row-major little-endian float64 values.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO

import numpy as np

from ..exceptions import ConfigError, DomainError, PreconditionError
from ..geomcore import Rectangle

GRID_FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class Provenance:
    """Everything needed to reproduce a realization or its conditional law."""

    field_kind: str
    master_seed: int
    stream_index: int
    alpha: float | None = None
    truncation: int | None = None
    n_prime: int | None = None
    gamma_alpha: float | None = None
    mixing: float | None = None
    gammas: np.ndarray | None = None
    omegas: np.ndarray | None = None
    spec: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "field_kind": self.field_kind,
            "master_seed": self.master_seed,
            "stream_index": self.stream_index,
            "alpha": self.alpha,
            "truncation": self.truncation,
            "n_prime": self.n_prime,
            "gamma_alpha": self.gamma_alpha,
            "mixing": self.mixing,
            "gammas": None if self.gammas is None else self.gammas.tolist(),
            "omegas": None if self.omegas is None else self.omegas.tolist(),
            "spec": self.spec,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Provenance":
        gammas = data.get("gammas")
        omegas = data.get("omegas")
        return cls(
            field_kind=data["field_kind"],
            master_seed=int(data["master_seed"]),
            stream_index=int(data["stream_index"]),
            alpha=data.get("alpha"),
            truncation=data.get("truncation"),
            n_prime=data.get("n_prime"),
            gamma_alpha=data.get("gamma_alpha"),
            mixing=data.get("mixing"),
            gammas=None if gammas is None else np.asarray(gammas, dtype=float),
            omegas=None if omegas is None else np.asarray(omegas, dtype=float),
            spec=dict(data.get("spec", {})),
        )


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """A realization on the regular grid with ``resolution[i]`` nodes along axis i."""

    rectangle: Rectangle
    resolution: tuple[int, ...]
    values: np.ndarray
    provenance: Provenance | None = None

    def __post_init__(self) -> None:
        res = tuple(int(r) for r in self.resolution)
        if len(res) != self.rectangle.dimension:
            raise DomainError(
                f"resolution has {len(res)} axes for a {self.rectangle.dimension}-D rectangle"
            )
        if any(r < 2 for r in res):
            raise DomainError(f"every axis needs at least 2 nodes, got {res}")
        values = np.asarray(self.values, dtype=float)
        if values.size != math.prod(res):
            raise DomainError(f"{values.size} values for resolution {res}")
        values = values.reshape(res)
        if not np.all(np.isfinite(values)):
            raise DomainError("grid values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "resolution", res)
        object.__setattr__(self, "values", values)

    @property
    def dimension(self) -> int:
        return self.rectangle.dimension

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(
            t / (n - 1) for t, n in zip(self.rectangle.side_lengths, self.resolution, strict=True)
        )

    def axes(self) -> list[np.ndarray]:
        return [
            np.linspace(0.0, t, n)
            for t, n in zip(self.rectangle.side_lengths, self.resolution, strict=True)
        ]

    def require_provenance(self) -> Provenance:
        if self.provenance is None:
            raise PreconditionError("grid carries no provenance")
        return self.provenance


def _header(grid: FieldGrid) -> dict[str, Any]:
    return {
        "format_version": GRID_FORMAT_VERSION,
        "dimensions": list(grid.resolution),
        "rectangle": list(grid.rectangle.side_lengths),
        "field_kind": grid.provenance.field_kind if grid.provenance else None,
        "seed": grid.provenance.master_seed if grid.provenance else None,
        "provenance": grid.provenance.to_dict() if grid.provenance else None,
    }


def write_grid(grid: FieldGrid, stream: BinaryIO) -> None:
    stream.write(json.dumps(_header(grid), sort_keys=True).encode("utf-8") + b"\n")
    stream.write(np.ascontiguousarray(grid.values, dtype="<f8").tobytes())


def read_grid(stream: BinaryIO) -> FieldGrid:
    line = stream.readline()
    try:
        header = json.loads(line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"grid header is not valid JSON: {e}", line=1) from e
    dims = tuple(int(d) for d in header["dimensions"])
    payload = stream.read()
    expected = 8 * math.prod(dims)
    if len(payload) != expected:
        raise ConfigError(f"grid payload has {len(payload)} bytes, expected {expected}")
    values = np.frombuffer(payload, dtype="<f8").astype(float).reshape(dims)
    prov = header.get("provenance")
    return FieldGrid(
        rectangle=Rectangle(tuple(header["rectangle"])),
        resolution=dims,
        values=values,
        provenance=Provenance.from_dict(prov) if prov else None,
    )


def dump_grid(grid: FieldGrid, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as f:
        write_grid(grid, f)


def load_grid(path: Path) -> FieldGrid:
    with path.open("rb") as f:
        return read_grid(f)
