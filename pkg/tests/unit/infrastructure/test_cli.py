"""Pruebas de la CLI (click + rich)."""

import pytest
from click.testing import CliRunner

from src.infrastructure.cli.main import cli

SMALL_CONFIG = """\
solver:
  max_iter: 20
experiment:
  seeds: [1, 2]
  sweep_values: [4, 6]
  output_prefix: cli
"""


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(SMALL_CONFIG, encoding="utf-8")
    return path


def _invoke(runner, *args):
    return runner.invoke(cli, list(args), obj={})


class TestValidateConfig:
    def test_default_file(self, runner, default_config_file):
        result = _invoke(runner, "validate-config", str(default_config_file))
        assert result.exit_code == 0
        assert "Configuración válida" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = _invoke(runner, "-c", str(tmp_path / "missing.yaml"), "validate-config")
        assert result.exit_code == 1

    def test_unknown_flag(self, runner):
        result = _invoke(runner, "validate-config", "--bogus")
        assert result.exit_code == 2


class TestSimulate:
    def test_writes_runs_csv(self, runner, config_file, tmp_path):
        out = tmp_path / "out"
        result = _invoke(
            runner, "-c", str(config_file), "-o", str(out), "simulate", "--seed", "3",
            "--point", "4",
        )
        assert result.exit_code == 0, result.output
        lines = (out / "simulate_seed3.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# ee-cmec runs schema v1"
        assert len(lines) == 2 + 3

    def test_single_method(self, runner, config_file, tmp_path):
        out = tmp_path / "out"
        result = _invoke(
            runner, "-c", str(config_file), "-o", str(out), "simulate", "-m", "fpa",
            "--output-name", "fpa.csv",
        )
        assert result.exit_code == 0, result.output
        assert len((out / "fpa.csv").read_text(encoding="utf-8").splitlines()) == 3

    def test_unknown_method(self, runner, config_file):
        result = _invoke(runner, "-c", str(config_file), "simulate", "-m", "greedy")
        assert result.exit_code == 2


class TestSweep:
    def test_writes_runs_and_summary(self, runner, config_file, tmp_path):
        out = tmp_path / "out"
        result = _invoke(runner, "-c", str(config_file), "-o", str(out), "sweep")
        assert result.exit_code == 0, result.output
        runs = (out / "cli_runs.csv").read_text(encoding="utf-8").splitlines()
        summary = (out / "cli_summary.csv").read_text(encoding="utf-8").splitlines()
        assert len(runs) == 2 + 3 * 2 * 2
        assert len(summary) == 2 + 3 * 2

    def test_invalid_workers(self, runner, config_file):
        result = _invoke(runner, "-c", str(config_file), "sweep", "--workers", "0")
        assert result.exit_code == 2


class TestCPF:
    def test_two_bus(self, runner, twobus_file, tmp_path):
        result = _invoke(runner, "-o", str(tmp_path), "cpf", str(twobus_file))
        assert result.exit_code == 0, result.output
        assert "λ_max" in result.output
        assert (tmp_path / "twobus_trace.csv").exists()

    def test_invalid_stop_fraction(self, runner, twobus_file, tmp_path):
        result = _invoke(
            runner, "-o", str(tmp_path), "cpf", str(twobus_file), "--stop-fraction", "1.5"
        )
        assert result.exit_code == 1

    def test_missing_bus_file(self, runner, tmp_path):
        result = _invoke(runner, "cpf", str(tmp_path / "nope.txt"))
        assert result.exit_code == 2


class TestOutage:
    ARGS = ("outage", "--n", "3", "--m", "2", "--k", "2", "--l", "1", "--rho", "10")

    def test_closed_form(self, runner):
        result = _invoke(runner, *self.ARGS, "--r0", "1")
        assert result.exit_code == 0, result.output
        assert "Forma cerrada" in result.output
        assert "PASS" not in result.output

    def test_monte_carlo_verdict(self, runner):
        result = _invoke(runner, *self.ARGS, "--r0", "0", "--mc", "1000", "--seed", "1")
        assert result.exit_code == 0, result.output
        assert "PASS" in result.output

    def test_direct_variances(self, runner):
        result = _invoke(runner, *self.ARGS, "--r0", "1", "--direct-variances", "1,0.5,2")
        assert result.exit_code == 0, result.output

    def test_bad_direct_variances(self, runner):
        result = _invoke(runner, *self.ARGS, "--r0", "1", "--direct-variances", "1,x")
        assert result.exit_code == 2

    def test_guard_is_an_error(self, runner):
        result = _invoke(
            runner, "outage", "--n", "11", "--m", "1", "--k", "1", "--l", "1", "--rho", "1",
            "--r0", "1",
        )
        assert result.exit_code == 1

    def test_missing_required_option(self, runner):
        result = _invoke(runner, "outage", "--n", "3")
        assert result.exit_code == 2
