"""Random sampling primitives with reproducible per-replicate streams."""

from .poisson import ArrivalSequence, default_truncation, sample_arrivals
from .spectral import MeasureMoments, SpectralMeasure, measure_moments, sample_frequencies
from .stable import sample_positive_stable
from .streams import RngStream

__all__ = [
    "RngStream",
    "sample_positive_stable",
    "ArrivalSequence",
    "sample_arrivals",
    "default_truncation",
    "SpectralMeasure",
    "MeasureMoments",
    "sample_frequencies",
    "measure_moments",
]
