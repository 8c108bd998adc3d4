"""
Tests for the heatwave-ac command-line interface.
"""

import json

import pytest
from helpers import write_synthetic_inputs

from heatwave_ac.model.presence import HOURS
from heatwave_ac.scripts.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
    parse_args,
)


@pytest.fixture
def results_dir(three_cell_inputs, tmp_path):
    """Directory populated by a run on the three-cell inputs."""
    census, weather = three_cell_inputs
    out = tmp_path / "results"
    argv = ["run", "--census", str(census), "--weather", str(weather)]
    argv += ["--out", str(out)]
    assert main(argv) == 0
    return out


class TestParseArgs:
    """Test suite for argument parsing."""

    def test_run_defaults(self):
        """Test run options and their defaults."""
        args = parse_args(
            ["run", "--census", "c.csv", "--weather", "w.csv", "--out", "o"]
        )
        assert args.command == "run"
        assert args.config is None
        assert args.baseline_gw is None
        assert args.threads == 0

    def test_top_defaults(self):
        """Test top lists ten cells by default."""
        args = parse_args(["top", "--results", "r", "--hour", "17"])
        assert (args.hour, args.n) == (17, 10)

    def test_bbox(self):
        """Test the bounding box is parsed into four floats."""
        args = parse_args(["region", "--results", "r", "--bbox", "52,13,53,14.5"])
        assert args.bbox == (52.0, 13.0, 53.0, 14.5)

    def test_bad_bbox(self):
        """Test a malformed bounding box is a usage error."""
        with pytest.raises(SystemExit):
            parse_args(["region", "--results", "r", "--bbox", "52,13"])

    def test_command_required(self):
        """Test a subcommand must be given."""
        with pytest.raises(SystemExit):
            parse_args([])


class TestValidateCommand:
    """Test suite for `heatwave-ac validate`."""

    def test_ok(self, three_cell_inputs, capsys):
        """Test clean inputs exit 0 with an ok report."""
        census, weather = three_cell_inputs
        code = main(["validate", "--census", str(census), "--weather", str(weather)])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert report["cells"] == 3

    def test_duplicate_grid_id(self, census_csv, weather_csv, capsys):
        """Test a duplicate census id exits 1 and is named in the report."""
        census = census_csv(["a,52.0,13.0,1,0,0,0,0,0", "a,52.0,13.0,1,0,0,0,0,0"])
        weather = weather_csv([("s", 52.0, 13.0, [20.0] * HOURS)])
        code = main(["validate", "--census", str(census), "--weather", str(weather)])
        assert code == EXIT_VALIDATION
        report = json.loads(capsys.readouterr().out)
        assert report["errors"][0]["error"] == "DuplicateGridId"

    def test_missing_file(self, tmp_path, capsys):
        """Test a missing input exits 2."""
        code = main(
            [
                "validate",
                "--census",
                str(tmp_path / "none.csv"),
                "--weather",
                str(tmp_path / "none.csv"),
            ]
        )
        assert code == EXIT_IO
        assert capsys.readouterr().out == ""


class TestRunCommand:
    """Test suite for `heatwave-ac run`."""

    def test_run_prints_summary(self, three_cell_inputs, tmp_path, capsys):
        """Test run writes results and prints a short summary."""
        census, weather = three_cell_inputs
        out = tmp_path / "out"
        code = main(
            [
                "run",
                "--census", str(census),
                "--weather", str(weather),
                "--out", str(out),
                "--threads", "2",
                "--baseline-gw", "61.3",
            ]
        )
        assert code == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["cells"] == 3
        assert summary["relative_increase_pct"] > 0
        assert (out / "cells.csv").is_file()

    def test_invalid_config(self, three_cell_inputs, config_toml, tmp_path, capsys):
        """Test a bad config exits 1 with a structured error."""
        census, weather = three_cell_inputs
        config = config_toml("[scenario]\neta = 1.5\n")
        code = main(
            [
                "run",
                "--census", str(census),
                "--weather", str(weather),
                "--config", str(config),
                "--out", str(tmp_path / "out"),
            ]
        )
        assert code == EXIT_VALIDATION
        payload = json.loads(capsys.readouterr().out)
        assert payload["errors"][0]["path"] == "scenario.eta"

    def test_negative_threads(self, three_cell_inputs, tmp_path):
        """Test a negative worker count is rejected."""
        census, weather = three_cell_inputs
        code = main(
            [
                "run",
                "--census", str(census),
                "--weather", str(weather),
                "--out", str(tmp_path / "out"),
                "--threads", "-2",
            ]
        )
        assert code == EXIT_VALIDATION

    def test_stdout_is_only_json(self, tmp_path, capsys):
        """Test logs stay off standard output."""
        census, weather = write_synthetic_inputs(tmp_path, 50, 3)
        out = str(tmp_path / "o")
        main(["run", "--census", str(census), "--weather", str(weather), "--out", out])
        json.loads(capsys.readouterr().out)


class TestQueryCommands:
    """Test suite for `heatwave-ac top` and `heatwave-ac region`."""

    def test_top(self, results_dir, capsys):
        """Test the top cells are printed as CSV, highest first."""
        capsys.readouterr()
        argv = ["top", "--results", str(results_dir), "--hour", "12", "--n", "2"]
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "rank,grid_id,kwh"
        assert len(lines) == 3
        values = [float(line.split(",")[2]) for line in lines[1:]]
        assert values == sorted(values, reverse=True)
        assert lines[1].startswith("1,")

    def test_top_bad_hour(self, results_dir):
        """Test hour 24 exits 1."""
        argv = ["top", "--results", str(results_dir), "--hour", "24"]
        assert main(argv) == EXIT_VALIDATION

    def test_top_missing_results(self, tmp_path):
        """Test a missing results directory exits 2."""
        argv = ["top", "--results", str(tmp_path / "nope"), "--hour", "1"]
        assert main(argv) == EXIT_IO

    def test_region(self, results_dir, capsys):
        """Test the Berlin box holds the two Berlin cells."""
        capsys.readouterr()
        code = main(["region", "--results", str(results_dir), "--bbox", "52,13,53,14"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["cells"] == 2
        assert len(payload["hourly_kwh"]) == HOURS
        assert payload["peak_kwh"] == max(payload["hourly_kwh"])

    def test_region_empty(self, results_dir):
        """Test a box without cells exits 1."""
        code = main(["region", "--results", str(results_dir), "--bbox", "0,0,1,1"])
        assert code == EXIT_VALIDATION
