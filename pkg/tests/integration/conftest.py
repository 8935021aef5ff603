"""Integration test configuration."""

import pytest

from src.harness import parse_experiment_config


def pytest_configure(config):
    """Register integration and slow markers."""
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
    config.addinivalue_line("markers", "slow: long Monte Carlo acceptance runs")


@pytest.fixture
def experiment_from_toml():
    """Build an ExperimentConfig from inline TOML."""
    return parse_experiment_config
