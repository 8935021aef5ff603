"""Experiment orchestration: configuration, replication, comparison, reporting."""

from .config import ExperimentConfig, load_experiment_config, parse_experiment_config
from .convergence import ConvergenceTable, convergence_table
from .experiment import ExperimentReport, LevelRow, compute_predictions, run_experiment
from .reporting import (
    acceptance_summary,
    long_format,
    read_report_csv,
    render_long_csv,
    render_report_csv,
    render_summary_json,
    write_report,
)
from .runner import measure_replicate, run_replicates, simulate_replicate

__all__ = [
    # Configuration
    "ExperimentConfig",
    "load_experiment_config",
    "parse_experiment_config",
    # Running
    "simulate_replicate",
    "measure_replicate",
    "run_replicates",
    "run_experiment",
    "compute_predictions",
    "ExperimentReport",
    "LevelRow",
    # Analysis
    "ConvergenceTable",
    "convergence_table",
    # Output
    "render_report_csv",
    "render_summary_json",
    "write_report",
    "read_report_csv",
    "long_format",
    "render_long_csv",
    "acceptance_summary",
]
