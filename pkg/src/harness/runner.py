"""Replicated Monte Carlo over independent field realizations.

Replicate i always draws from ``RngStream(master_seed, i)``; workers only
change the order in which replicates finish, never what they compute.
Results are reduced in replicate order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..config import Config
from ..excursion import euler_characteristic, lk_estimates, threshold, upcrossings_1d
from ..exceptions import ExcursionError
from ..fields import (
    FieldGrid,
    simulate_concatenated,
    simulate_gaussian,
    simulate_harmonisable,
    simulate_subgaussian,
)
from ..sampling import RngStream
from .config import ExperimentConfig

logger = logging.getLogger(__name__)


def metric_names(config: ExperimentConfig) -> list[str]:
    """Columns of a replicate's measurement matrix, ``ec`` first."""
    names = ["ec"]
    if "lk" in config.measurements:
        names += [f"lk{j}" for j in range(config.dimension + 1)]
    if "upcrossings" in config.measurements:
        names.append("upcrossings")
    return names


def simulate_replicate(config: ExperimentConfig, index: int, truncation: int | None = None) -> FieldGrid:
    """Field realization of replicate ``index``."""
    stream = RngStream(config.master_seed, index)
    rect, resolution = config.rectangle(), config.resolution()
    kind = config.field.kind
    if kind == "gaussian":
        return simulate_gaussian(config.gaussian_spec(), rect, resolution, stream)
    if kind == "sub_gaussian":
        return simulate_subgaussian(config.gaussian_spec(), config.field.alpha, rect, resolution, stream)
    k = truncation if truncation is not None else config.truncation(Config.numerics.max_truncation)
    if kind == "harmonisable":
        return simulate_harmonisable(config.measure(), config.field.alpha, k, rect, resolution, stream)
    return simulate_concatenated(
        config.measure(), config.field.alpha, config.field.n_prime, k, rect, resolution, stream
    )


def measure_replicate(config: ExperimentConfig, grid: FieldGrid) -> np.ndarray:
    """(levels × metrics) matrix of one realization."""
    rect = config.rectangle()
    rows = []
    for u in config.levels:
        cubical = threshold(grid, u)
        if "lk" in config.measurements:
            geometry = lk_estimates(cubical, rect)
            row = [float(geometry.euler), *geometry.lk_estimates]
        else:
            row = [float(euler_characteristic(cubical))]
        if "upcrossings" in config.measurements:
            row.append(float(upcrossings_1d(grid, u).count))
        rows.append(row)
    return np.asarray(rows, dtype=float)


@dataclass(frozen=True)
class ReplicateOutcome:
    index: int
    values: np.ndarray | None
    error: str | None = None


def _run_one(config: ExperimentConfig, index: int, truncation: int | None) -> ReplicateOutcome:
    try:
        grid = simulate_replicate(config, index, truncation)
        return ReplicateOutcome(index=index, values=measure_replicate(config, grid))
    except (ExcursionError, np.linalg.LinAlgError, FloatingPointError) as e:
        logger.warning(f"Replicate {index} failed: {e}")
        return ReplicateOutcome(index=index, values=None, error=str(e))


def run_replicates(
    config: ExperimentConfig, threads: int = 1, truncation: int | None = None
) -> list[ReplicateOutcome]:
    """All replicates, ordered by index whatever the worker count."""
    indices = range(config.replications)
    if threads <= 1:
        return [_run_one(config, i, truncation) for i in indices]
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="replicate") as pool:
        return list(pool.map(lambda i: _run_one(config, i, truncation), indices))


@dataclass(frozen=True)
class ReplicateSummary:
    """Per-level means and standard errors over the successful replicates."""

    metrics: tuple[str, ...]
    mean: np.ndarray
    stderr: np.ndarray
    n: int
    failed: int

    def column(self, metric: str) -> tuple[np.ndarray, np.ndarray]:
        j = self.metrics.index(metric)
        return self.mean[:, j], self.stderr[:, j]


def summarize(outcomes: list[ReplicateOutcome], metrics: list[str], n_levels: int) -> ReplicateSummary:
    """Ordered reduction of replicate matrices; stderr = sd/√n."""
    good = [o.values for o in sorted(outcomes, key=lambda o: o.index) if o.values is not None]
    failed = len(outcomes) - len(good)
    if not good:
        nan = np.full((n_levels, len(metrics)), np.nan)
        return ReplicateSummary(tuple(metrics), nan, nan.copy(), 0, failed)
    stack = np.stack(good)
    n = stack.shape[0]
    mean = stack.mean(axis=0)
    stderr = stack.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros_like(mean)
    return ReplicateSummary(tuple(metrics), mean, stderr, n, failed)
