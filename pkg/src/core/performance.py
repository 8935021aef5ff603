"""Performance monitoring utilities for the excursion toolkit.

This module provides decorators and a context manager for timing simulation,
measurement and prediction phases. Timings are logged and can be collected
into a ``WallClock`` for the experiment report.
"""

import functools
import logging
import time
from collections import defaultdict
from typing import Any, Callable, TypeVar

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


def measure_time(func: F) -> F:
    """Decorator to measure and log function execution time.

    Usage:
        @measure_time
        def run_experiment(config):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            elapsed = time.perf_counter() - start_time
            logger.info(f"⏱️  {func.__name__} took {elapsed:.3f}s")

    return wrapper  # type: ignore


def log_slow_operations(threshold_seconds: float = 1.0):
    """Decorator to log operations that exceed a time threshold.

    Args:
        threshold_seconds: Time threshold in seconds

    Usage:
        @log_slow_operations(threshold_seconds=5.0)
        def subgaussian_mean_ec_exact(...):
            ...
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            elapsed = time.perf_counter() - start_time
            if elapsed > threshold_seconds:
                logger.warning(
                    f"⚠️  Slow operation: {func.__name__} took {elapsed:.3f}s "
                    f"(threshold: {threshold_seconds}s)"
                )
            return result

        return wrapper  # type: ignore

    return decorator


class WallClock:
    """Accumulates elapsed seconds per named phase."""

    def __init__(self) -> None:
        self._totals: dict[str, float] = defaultdict(float)
        self._counts: dict[str, int] = defaultdict(int)

    def add(self, phase: str, seconds: float) -> None:
        self._totals[phase] += seconds
        self._counts[phase] += 1

    def summary(self) -> dict[str, dict[str, float]]:
        return {
            phase: {
                "total_s": total,
                "count": float(self._counts[phase]),
                "mean_s": total / self._counts[phase],
            }
            for phase, total in sorted(self._totals.items())
        }


class PerformanceMonitor:
    """Context manager for monitoring performance of code blocks.

    Usage:
        clock = WallClock()
        with PerformanceMonitor("predictions", clock=clock):
            table = predict_levels(config)
    """

    def __init__(
        self,
        operation_name: str,
        log_level: int = logging.INFO,
        clock: WallClock | None = None,
    ):
        self.operation_name = operation_name
        self.log_level = log_level
        self.clock = clock
        self.start_time = 0.0
        self.elapsed = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time
        if self.clock is not None:
            self.clock.add(self.operation_name, self.elapsed)
        logger.log(self.log_level, f"⏱️  {self.operation_name} took {self.elapsed:.3f}s")
        return False
