"""Tests for experiment configs, replication, convergence tables and reports."""

import json
from types import SimpleNamespace
from unittest.mock import patch

import numpy as np
import pytest

from src.config import Config
from src.exceptions import ConfigError, ExperimentError, InputError, SimulationError
from src.fields import GaussianFieldSpec
from src.geomcore import Rectangle
from src.harness import (
    LevelRow,
    acceptance_summary,
    convergence_table,
    long_format,
    parse_experiment_config,
    read_report_csv,
    render_long_csv,
    render_report_csv,
    render_summary_json,
    run_experiment,
    run_replicates,
    simulate_replicate,
    write_report,
)
from src.harness.convergence import approaches_one, find_plateau
from src.harness.runner import metric_names, summarize
from src.theory import AsymptoticPrediction, gaussian_mean_ec

GAUSSIAN_1D = """
name = "gauss1d"
master_seed = 11
replications = 30
levels = [-6.0, 0.0, 1.0]
measurements = ["ec", "lk", "upcrossings"]
compare = ["exact"]

[field]
kind = "gaussian"
length_scale = 0.5

[domain]
sides = [4.0]
resolution = [64]
"""

HARMONISABLE_2D = """
name = "harm2d"
master_seed = 3
replications = 4
levels = [0.5, 1.0]
compare = ["asymptotic"]

[field]
kind = "harmonisable"
alpha = 1.2
truncation = 16

[field.measure]
kind = "uniform_ball"
radius = 2.0

[domain]
sides = [1.0, 1.0]
resolution = [10, 10]

[predictions]
truncation_sensitivity = true
"""


@pytest.fixture
def gaussian_config():
    return parse_experiment_config(GAUSSIAN_1D)


@pytest.fixture
def harmonisable_config():
    return parse_experiment_config(HARMONISABLE_2D)


def make_row(u, mean, stderr, exact=None, asymp=None, n=100):
    return LevelRow.build(u, mean, stderr, n, exact, asymp)


class TestExperimentConfig:
    """Tests for parsing and validating experiment files."""

    def test_parses_defaults(self, gaussian_config):
        assert gaussian_config.dimension == 1
        assert gaussian_config.rectangle() == Rectangle.of(4.0)
        assert gaussian_config.resolution() == (64,)
        assert gaussian_config.predictions.conditional_draws == 10_000
        spec = gaussian_config.gaussian_spec()
        assert spec.spectral_moments[0, 0] == pytest.approx(4.0)

    def test_series_truncation_from_file(self, harmonisable_config):
        assert harmonisable_config.truncation(cap=8) == 16
        assert harmonisable_config.measure().radius == 2.0

    def test_reports_line_of_bad_value(self):
        text = GAUSSIAN_1D.replace("replications = 30", "replications = 0")
        with pytest.raises(ConfigError, match="replications") as exc:
            parse_experiment_config(text)
        assert exc.value.line == 4
        assert str(exc.value).startswith("line 4: ")

    def test_reports_line_in_nested_table(self):
        text = GAUSSIAN_1D.replace("length_scale = 0.5", "length_scale = -0.5")
        with pytest.raises(ConfigError, match="field.length_scale") as exc:
            parse_experiment_config(text)
        assert exc.value.line == 11

    def test_reports_table_of_missing_key(self):
        text = GAUSSIAN_1D.replace('kind = "gaussian"', 'kind = "sub_gaussian"')
        with pytest.raises(ConfigError, match="alpha is required") as exc:
            parse_experiment_config(text)
        assert exc.value.line == 9

    def test_malformed_toml(self):
        with pytest.raises(ConfigError, match="malformed TOML") as exc:
            parse_experiment_config("name = 'x'\nlevels = [1.0\n")
        assert exc.value.line is not None

    def test_upcrossings_need_one_dimension(self):
        text = HARMONISABLE_2D.replace('compare = ["asymptotic"]', 'measurements = ["upcrossings"]')
        with pytest.raises(ConfigError, match="one-dimensional"):
            parse_experiment_config(text)

    def test_coarse_resolution(self):
        text = GAUSSIAN_1D.replace("resolution = [64]", "resolution = [4]")
        with pytest.raises(ConfigError, match="at least 8"):
            parse_experiment_config(text)

    def test_harmonisable_rejects_wave_pairs(self):
        text = HARMONISABLE_2D.replace("truncation = 16", "truncation = 16\nn_prime = 2")
        with pytest.raises(ConfigError, match="concatenated"):
            parse_experiment_config(text)

    def test_overrides(self, gaussian_config):
        changed = gaussian_config.with_overrides(master_seed=99, levels=[2.0])
        assert changed.master_seed == 99
        assert changed.levels == [2.0]
        assert gaussian_config.master_seed == 11
        with pytest.raises(ConfigError, match="must not be empty"):
            gaussian_config.with_overrides(levels=[])


class TestRunner:
    """Tests for replicate simulation and reduction."""

    def test_metric_names(self, gaussian_config, harmonisable_config):
        assert metric_names(gaussian_config) == ["ec", "lk0", "lk1", "upcrossings"]
        assert metric_names(harmonisable_config) == ["ec"]

    def test_replicate_uses_its_own_stream(self, gaussian_config):
        grid = simulate_replicate(gaussian_config, 7)
        assert grid.provenance.master_seed == 11
        assert grid.provenance.stream_index == 7

    def test_default_truncation_honours_settings_cap(self, harmonisable_config, monkeypatch):
        """Without a file K the default rule is capped by the process-wide setting."""
        uncapped = harmonisable_config.model_copy(
            update={"field": harmonisable_config.field.model_copy(update={"truncation": None})}
        )
        monkeypatch.setattr(Config.numerics, "max_truncation", 64)
        grid = simulate_replicate(uncapped, 2)
        assert grid.provenance.truncation == 64
        assert grid.provenance.gammas.shape == (64,)

    def test_thread_count_does_not_change_results(self, gaussian_config):
        serial = run_replicates(gaussian_config, threads=1)
        pooled = run_replicates(gaussian_config, threads=3)
        assert [o.index for o in pooled] == list(range(30))
        for a, b in zip(serial, pooled, strict=True):
            np.testing.assert_array_equal(a.values, b.values)

    def test_summarize_skips_failures(self):
        outcomes = [
            SimpleNamespace(index=0, values=np.array([[1.0]])),
            SimpleNamespace(index=1, values=None),
            SimpleNamespace(index=2, values=np.array([[3.0]])),
        ]
        summary = summarize(outcomes, ["ec"], 1)
        assert summary.n == 2 and summary.failed == 1
        mean, stderr = summary.column("ec")
        assert mean[0] == 2.0
        assert stderr[0] == pytest.approx(np.sqrt(2.0) / np.sqrt(2.0))

    def test_failed_replicates_are_logged(self, gaussian_config):
        with (
            patch("src.harness.runner.simulate_replicate", side_effect=SimulationError("boom")),
            patch("src.harness.runner.logger") as mock_logger,
        ):
            outcomes = run_replicates(gaussian_config.with_overrides(levels=[0.0]))
        assert all(o.values is None and o.error == "boom" for o in outcomes)
        assert mock_logger.warning.call_count == 30


class TestRunExperiment:
    """Tests for full experiments on small grids."""

    def test_gaussian_experiment(self, gaussian_config):
        report = run_experiment(gaussian_config, threads=2)
        assert report.predictions.exact_source == "gaussian"
        assert report.truncation is None and report.truncation_sensitivity is None
        assert [row.u for row in report.rows] == [-6.0, 0.0, 1.0]

        low = report.rows[0]
        assert low.mean_ec == 1.0 and low.stderr == 0.0
        assert low.ratio == pytest.approx(1.0, abs=1e-6)

        spec = GaussianFieldSpec.squared_exponential(1.0, 0.5, 1)
        assert report.rows[2].pred_exact == pytest.approx(gaussian_mean_ec(spec, Rectangle.of(4.0), 1.0))
        # Upcrossings plus the start indicator give the 1-D Euler characteristic
        ec, _ = report.summary.column("ec")
        up, _ = report.summary.column("upcrossings")
        assert np.all(up <= ec + 1e-12)
        assert set(report.wall_clock) == {"replicates", "predictions"}

    def test_reports_are_reproducible(self, gaussian_config):
        first = run_experiment(gaussian_config, threads=1)
        second = run_experiment(gaussian_config, threads=4)
        assert first.provenance_digest == second.provenance_digest
        assert render_report_csv(first) == render_report_csv(second)
        assert render_summary_json(first) == render_summary_json(second)

    def test_seed_changes_digest(self, gaussian_config):
        first = run_experiment(gaussian_config)
        second = run_experiment(gaussian_config.with_overrides(master_seed=12))
        assert first.provenance_digest != second.provenance_digest

    def test_harmonisable_experiment(self, harmonisable_config):
        report = run_experiment(harmonisable_config)
        assert report.truncation == 16
        assert len(report.truncation_sensitivity) == 2
        assert report.predictions.exact_source is None
        assert all(row.pred_exact is None for row in report.rows)
        constant = report.predictions.asymptotic.constant
        assert report.rows[1].pred_asymp == pytest.approx(constant)
        assert "moments" in report.predictions.details

    def test_failure_budget(self, gaussian_config):
        with patch("src.harness.runner.simulate_replicate", side_effect=SimulationError("boom")):
            with pytest.raises(ExperimentError, match="30 of 30"):
                run_experiment(gaussian_config)


class TestLevelRow:
    """Tests for report rows."""

    def test_prefers_exact_prediction(self):
        row = make_row(1.0, 1.0, 0.1, exact=2.0, asymp=4.0)
        assert row.ratio == 0.5 and row.ratio_se == pytest.approx(0.05)

    def test_falls_back_to_asymptote(self):
        row = make_row(1.0, 1.0, 0.1, asymp=4.0)
        assert row.ratio == 0.25

    def test_without_prediction(self):
        row = make_row(1.0, 1.0, 0.1)
        assert row.ratio is None and row.ratio_se is None


class TestConvergence:
    """Tests for plateau detection and the convergence table."""

    def test_find_plateau(self):
        assert find_plateau([1.0, 2.0, 3.0, 4.0], [0.5, 0.98, 1.0, 1.02]) == (2.0, 4.0)
        assert find_plateau([1.0, 2.0], [0.5, 1.0]) is None

    def test_approaches_one(self):
        assert approaches_one([1.5, 1.2, 1.05], [0.01] * 3)
        assert not approaches_one([1.0, 1.5], [0.01, 0.01])

    def test_table(self):
        prediction = AsymptoticPrediction.from_breakdown(1.0, [2.0])
        rows = [make_row(u, 2.0 / u, 0.01, asymp=prediction.at(u)) for u in (-1.0, 1.0, 2.0, 4.0)]
        report = SimpleNamespace(
            rows=rows, alpha=1.0, predictions=SimpleNamespace(asymptotic=prediction)
        )
        table = convergence_table(report)
        assert table.available
        assert [r.u for r in table.rows] == [1.0, 2.0, 4.0]
        assert all(r.ratio == pytest.approx(1.0) for r in table.rows)
        assert table.plateau == (1.0, 4.0)
        assert table.monotone_approach

    def test_unavailable_without_asymptote(self):
        report = SimpleNamespace(rows=[], alpha=None, predictions=SimpleNamespace(asymptotic=None))
        table = convergence_table(report)
        assert not table.available
        assert table.reason == "no asymptotic prediction"
        assert table.to_dict()["rows"] == []


class TestReporting:
    """Tests for report files and the acceptance summary."""

    def test_csv_round_trip(self, tmp_path):
        report = SimpleNamespace(rows=[make_row(0.5, 1.25, 0.1, exact=1.2), make_row(1.0, 0.3, 0.05)])
        path = tmp_path / "a.csv"
        path.write_text(render_report_csv(report), encoding="utf-8")
        rows = read_report_csv(path)
        assert rows[0]["pred_exact"] == 1.2
        assert rows[1]["pred_exact"] is None
        assert rows[1]["n"] == 100

    def test_csv_header(self):
        text = render_report_csv(SimpleNamespace(rows=[]))
        assert text == "u,mean_ec,stderr,n,pred_exact,pred_asymp,ratio,ratio_se\n"

    def test_rejects_foreign_csv(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(InputError, match="not an experiment report"):
            read_report_csv(path)

    def test_write_report(self, gaussian_config, tmp_path):
        report = run_experiment(gaussian_config.with_overrides(levels=[0.0]))
        csv_path, json_path = write_report(report, tmp_path / "out")
        assert csv_path.name == "gauss1d.csv"
        summary = json.loads(json_path.read_text(encoding="utf-8"))
        assert summary["schema_version"] == 1
        assert summary["replicates_used"] == 30
        assert summary["predictions"]["exact_source"] == "gaussian"
        assert "wall_clock" not in summary
        assert summary["convergence"]["available"] is False

    def test_long_format(self):
        sources = {
            "b": [make_row(1.0, 0.5, 0.1, exact=0.55)],
            "a": [make_row(2.0, 0.25, 0.05)],
        }
        records = long_format(sources)
        assert records[0]["source"] == "a"
        assert {r["metric"] for r in records if r["source"] == "a"} == {"mean_ec", "stderr"}
        text = render_long_csv(records)
        assert text.splitlines()[0] == "source,u,metric,value"
        assert "b,1.0,pred_exact,0.55" in text

    def test_acceptance_summary(self):
        sources = {
            "run": [
                make_row(0.0, 1.0, 0.1, exact=1.05),
                make_row(1.0, 1.0, 0.1, exact=2.0),
                make_row(2.0, 1.0, 0.1, asymp=1.1),
            ]
        }
        lines, passed = acceptance_summary(sources)
        assert not passed
        assert lines[0].startswith("PASS run u=0")
        assert lines[1].startswith("FAIL run u=1")
        assert lines[2].startswith("SKIP run u=2")
