"""Tests for performance monitoring utilities."""

import logging
import time
from unittest.mock import patch

import pytest

from src.core.performance import PerformanceMonitor, WallClock, log_slow_operations, measure_time


class TestMeasureTime:
    """Tests for measure_time decorator."""

    def test_measure_time_sync(self):
        """Test measure_time decorator with sync function."""

        @measure_time
        def sync_function():
            time.sleep(0.01)
            return "result"

        with patch("src.core.performance.logger") as mock_logger:
            result = sync_function()

            assert result == "result"
            mock_logger.info.assert_called_once()
            log_message = mock_logger.info.call_args[0][0]
            assert "sync_function" in log_message
            assert "took" in log_message

    def test_measure_time_sync_with_exception(self):
        """Test measure_time still logs when the function raises."""

        @measure_time
        def failing_function():
            raise ValueError("Test error")

        with patch("src.core.performance.logger") as mock_logger:
            with pytest.raises(ValueError, match="Test error"):
                failing_function()

            mock_logger.info.assert_called_once()

    def test_measure_time_sync_with_args(self):
        """Test measure_time passes arguments through."""

        @measure_time
        def function_with_args(a, b, c=None):
            return a + b + (c or 0)

        with patch("src.core.performance.logger"):
            assert function_with_args(1, 2, c=3) == 6


class TestLogSlowOperations:
    """Tests for log_slow_operations decorator."""

    def test_log_slow_operations_fast_sync(self):
        """Fast operations don't trigger warnings."""

        @log_slow_operations(threshold_seconds=1.0)
        def fast_function():
            return "result"

        with patch("src.core.performance.logger") as mock_logger:
            assert fast_function() == "result"
            mock_logger.warning.assert_not_called()

    def test_log_slow_operations_slow_sync(self):
        """Slow operations trigger a warning naming the function."""

        @log_slow_operations(threshold_seconds=0.01)
        def slow_function():
            time.sleep(0.02)
            return "result"

        with patch("src.core.performance.logger") as mock_logger:
            assert slow_function() == "result"
            mock_logger.warning.assert_called_once()
            log_message = mock_logger.warning.call_args[0][0]
            assert "Slow operation" in log_message
            assert "slow_function" in log_message
            assert "threshold" in log_message

    def test_log_slow_operations_with_exception(self):
        """Exceptions propagate unchanged."""

        @log_slow_operations(threshold_seconds=0.01)
        def failing_function():
            raise ValueError("Test error")

        with patch("src.core.performance.logger"):
            with pytest.raises(ValueError, match="Test error"):
                failing_function()


class TestWallClock:
    """Tests for per-phase accumulation."""

    def test_summary_totals_and_means(self):
        clock = WallClock()
        clock.add("simulate", 1.0)
        clock.add("simulate", 3.0)
        clock.add("measure", 0.5)

        summary = clock.summary()

        assert list(summary) == ["measure", "simulate"]
        assert summary["simulate"] == {"total_s": 4.0, "count": 2.0, "mean_s": 2.0}
        assert summary["measure"]["mean_s"] == 0.5

    def test_empty_summary(self):
        assert WallClock().summary() == {}


class TestPerformanceMonitor:
    """Tests for PerformanceMonitor context manager."""

    def test_performance_monitor_sync(self):
        """The monitor logs the elapsed time."""
        with patch("src.core.performance.logger") as mock_logger:
            with PerformanceMonitor("test_operation") as monitor:
                time.sleep(0.01)

            mock_logger.log.assert_called_once()
            log_message = mock_logger.log.call_args[0][1]
            assert "test_operation" in log_message
            assert "took" in log_message
            assert monitor.elapsed > 0.0

    def test_performance_monitor_custom_log_level(self):
        """Test PerformanceMonitor with custom log level."""
        with patch("src.core.performance.logger") as mock_logger:
            with PerformanceMonitor("test_operation", log_level=logging.DEBUG):
                pass

            assert mock_logger.log.call_args[0][0] == logging.DEBUG

    def test_performance_monitor_records_into_clock(self):
        """Elapsed time lands in the clock under the operation name."""
        clock = WallClock()
        with patch("src.core.performance.logger"):
            with PerformanceMonitor("replicates", clock=clock):
                pass
            with PerformanceMonitor("replicates", clock=clock):
                pass

        assert clock.summary()["replicates"]["count"] == 2.0

    def test_performance_monitor_with_exception(self):
        """Exceptions propagate and the time is still recorded."""
        clock = WallClock()
        with patch("src.core.performance.logger") as mock_logger:
            with pytest.raises(ValueError, match="Test error"):
                with PerformanceMonitor("test_operation", clock=clock):
                    raise ValueError("Test error")

            mock_logger.log.assert_called_once()
        assert "test_operation" in clock.summary()
