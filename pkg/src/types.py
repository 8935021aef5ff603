"""Type definitions for serialized records.

This module contains TypedDict definitions for the rows and JSON records the
toolkit reads and writes, so readers and writers agree on field names.
"""

from typing import TypedDict


class ReportRow(TypedDict):
    """One level of an experiment report CSV."""

    u: float  # Excursion level
    mean_ec: float  # Monte Carlo mean Euler characteristic
    stderr: float  # Sample standard deviation / sqrt(n)
    n: int  # Successful replicates
    pred_exact: float | None  # Exact finite-u prediction, if any
    pred_asymp: float | None  # constant * u^-alpha, if any
    ratio: float | None  # mean_ec / prediction (exact preferred)
    ratio_se: float | None  # stderr / prediction


class GeometryRecord(TypedDict):
    """Measured geometry of one excursion set."""

    level: float | None
    euler: int
    lk_estimates: list[float]  # ℒ̂_0 .. ℒ̂_N
    cell_counts: list[int]  # n_0 .. n_N


class LongRecord(TypedDict):
    """One row of the plot-ready long-format CSV."""

    source: str  # Report file stem
    u: float
    metric: str  # Column name of the originating report
    value: float
