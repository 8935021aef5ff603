"""Tests for the command-line entry point."""

import json
from unittest.mock import patch

import numpy as np
import pytest

from src.exceptions import ConfigError, QuadratureError
from src.fields import FieldGrid, dump_grid
from src.geomcore import Rectangle
from src.main import EXIT_CONFIG, EXIT_ERROR, EXIT_NUMERICAL, main, parse_floats

CONFIG = """
name = "cli"
master_seed = 2
replications = 5
levels = [0.0, 1.0]

[field]
kind = "gaussian"
length_scale = 0.5

[domain]
sides = [2.0]
resolution = [32]
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "cli.toml"
    path.write_text(CONFIG, encoding="utf-8")
    return path


class TestParseFloats:
    """Tests for comma-separated number lists."""

    def test_parses(self):
        assert parse_floats("0, 1,2.5") == [0.0, 1.0, 2.5]

    def test_rejects_text(self):
        with pytest.raises(ConfigError, match="comma-separated"):
            parse_floats("a,b")

    def test_rejects_empty(self):
        with pytest.raises(ConfigError, match="at least one"):
            parse_floats(" , ")


class TestTheoryCommand:
    """Tests for `theory`."""

    def test_gaussian(self, capsys):
        assert main(["theory", "--model", "gaussian", "--T", "1,1", "--u", "1"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["value"] == pytest.approx(0.39023, abs=5e-5)

    def test_sub_gaussian_constants(self, capsys):
        assert main(["theory", "--model", "sub_gaussian", "--T", "1", "--alpha", "1"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["constants"]["k"][0] == pytest.approx(0.2251, abs=5e-5)
        assert "exact" not in result

    def test_harmonisable_value(self, capsys):
        argv = ["theory", "--model", "harmonisable", "--T", "1,2", "--alpha", "1.5", "--u", "4"]
        assert main(argv) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["value"] == pytest.approx(result["asymptotic"]["constant"] * 4.0**-1.5)

    def test_missing_alpha(self):
        assert main(["theory", "--model", "harmonisable", "--T", "1"]) == EXIT_CONFIG

    def test_gaussian_needs_level(self):
        assert main(["theory", "--model", "gaussian", "--T", "1"]) == EXIT_CONFIG

    def test_numerical_failure(self):
        argv = ["theory", "--model", "sub_gaussian", "--T", "1", "--alpha", "1", "--u", "2"]
        with patch("src.main.subgaussian_mean_ec_exact", side_effect=QuadratureError("stalled")):
            assert main(argv) == EXIT_NUMERICAL


class TestSimulateAndMeasure:
    """Tests for `simulate` and `measure`."""

    def test_simulate_writes_grids(self, config_path, tmp_path, capsys):
        out = tmp_path / "grids"
        assert main(["simulate", "--config", str(config_path), "--out", str(out), "--count", "2"]) == 0
        assert sorted(p.name for p in out.iterdir()) == ["cli_00000.bin", "cli_00001.bin"]
        assert capsys.readouterr().out.count(".bin") == 2

    def test_measure_grid(self, tmp_path, capsys):
        grid = FieldGrid(Rectangle.of(1.0, 1.0), (3, 3), np.array([0, 0, 0, 0, 2, 0, 0, 0, 0.0]))
        path = tmp_path / "g.bin"
        dump_grid(grid, path)
        assert main(["measure", "--in", str(path), "--levels", "1,-1"]) == 0
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [r["euler"] for r in records] == [1, 1]
        assert records[0]["cell_counts"] == [1, 0, 0]
        assert records[1]["lk_estimates"][2] == pytest.approx(1.0)

    def test_bad_config(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("replications = 'many'\n", encoding="utf-8")
        assert main(["simulate", "--config", str(path)]) == EXIT_CONFIG

    def test_missing_config(self, tmp_path):
        assert main(["experiment", "--config", str(tmp_path / "none.toml")]) == EXIT_CONFIG


class TestExperimentAndReport:
    """Tests for `experiment` and `report`."""

    def test_experiment_then_report(self, config_path, tmp_path, capsys):
        out = tmp_path / "reports"
        argv = ["experiment", "--config", str(config_path), "--out", str(out), "--threads", "2"]
        assert main(argv) == 0
        csv_path = out / "cli.csv"
        assert csv_path.exists() and (out / "cli.json").exists()
        capsys.readouterr()

        long_path = tmp_path / "long.csv"
        code = main(["report", "--in", str(csv_path), "--out", str(long_path)])
        printed = capsys.readouterr().out
        assert code in (0, EXIT_ERROR)
        assert long_path.read_text(encoding="utf-8").startswith("source,u,metric,value\n")
        assert printed.count("cli u=") == 2

    def test_level_override(self, config_path, tmp_path):
        out = tmp_path / "reports"
        argv = ["experiment", "--config", str(config_path), "--out", str(out), "--levels", "3"]
        assert main(argv) == 0
        lines = (out / "cli.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("3.0,")

    def test_failing_acceptance(self, tmp_path, capsys):
        path = tmp_path / "r.csv"
        path.write_text(
            "u,mean_ec,stderr,n,pred_exact,pred_asymp,ratio,ratio_se\n1.0,0.5,0.01,10,0.9,,,\n",
            encoding="utf-8",
        )
        assert main(["report", "--in", str(path), "--out", str(tmp_path / "l.csv")]) == EXIT_ERROR
        assert "SOME CHECKS FAILED" in capsys.readouterr().out
