"""Core infrastructure modules."""

from .logging import bind_context, clear_context, configure_logging, get_logger, unbind_context
from .performance import PerformanceMonitor, WallClock, log_slow_operations, measure_time
from .retry import escalating_quadrature

__all__ = [
    # Logging
    "configure_logging",
    "get_logger",
    "bind_context",
    "unbind_context",
    "clear_context",
    # Performance
    "PerformanceMonitor",
    "WallClock",
    "measure_time",
    "log_slow_operations",
    # Retry
    "escalating_quadrature",
]
