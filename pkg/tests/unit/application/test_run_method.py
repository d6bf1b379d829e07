"""Pruebas del caso de uso RunMethod."""

import pytest

from src.application.use_cases.run_method.run_method_command import RunMethodCommand
from src.application.use_cases.run_method.run_method_handler import RunMethodHandler
from src.domain.model.experiment_config import ExperimentConfig
from src.domain.model.run_record import Method
from src.domain.service.scenario_generator import generate_scenario


@pytest.fixture
def handler() -> RunMethodHandler:
    return RunMethodHandler()


class TestRunMethodCommand:
    def test_empty_methods_rejected(self, small_config):
        with pytest.raises(ValueError):
            RunMethodCommand(config=small_config, seed=1, methods=())

    def test_defaults_to_configured_methods(self, small_config):
        command = RunMethodCommand(config=small_config, seed=1)
        assert command.resolved_methods() == small_config.experiment.methods


class TestRunMethodHandler:
    def test_one_record_per_method(self, handler, small_config):
        records = handler.execute(RunMethodCommand(config=small_config, seed=1, point=6))
        assert [r.method for r in records] == ["fpa", "rpa", "eecmec"]
        assert all(r.n_users == 6 and r.sweep_point == 6.0 for r in records)

    def test_methods_share_scenario(self, handler, small_config):
        records = handler.execute(RunMethodCommand(config=small_config, seed=2, point=8))
        assert len({r.scenario_fingerprint for r in records}) == 1
        assert len({r.config_fingerprint for r in records}) == 3

    def test_baseline_saves_nothing(self, handler, small_config):
        records = handler.execute(
            RunMethodCommand(config=small_config, seed=1, point=6, methods=(Method.FPA,))
        )
        assert records[0].energy_saving == 0.0
        assert records[0].iterations == 0

    def test_cooperation_never_costs_grid_power(self, handler, small_config):
        for seed in small_config.experiment.seeds:
            fpa, _, eecmec = handler.execute(
                RunMethodCommand(config=small_config, seed=seed, point=8)
            )
            assert eecmec.grid_power <= fpa.grid_power + 1e-6
            assert eecmec.energy_saving == pytest.approx(fpa.grid_power - eecmec.grid_power)

    def test_single_station_matches_fixed_allocation(self, handler):
        config = ExperimentConfig.model_validate(
            {"scenario": {"n_small": 0, "n_users": 5}, "solver": {"max_iter": 30}}
        )
        scenario = generate_scenario(config.scenario_config(), seed=3)
        fpa = handler.run_fpa(scenario, config)
        eecmec = handler.run_eecmec(scenario, config)
        assert eecmec.total_throughput == pytest.approx(fpa.total_throughput, rel=1e-12)

    def test_stations_without_cache_serve_nobody(self, handler):
        config = ExperimentConfig.model_validate(
            {"catalog": {"small_cache_size": 0}, "solver": {"max_iter": 30}}
        )
        records = {r.method: r for r in handler.execute(RunMethodCommand(config=config, seed=1))}

        assert set(records) == {"fpa", "rpa", "eecmec"}
        assert all(r.total_throughput > 0.0 for r in records.values())
        assert records["eecmec"].total_throughput == pytest.approx(
            records["fpa"].total_throughput, rel=1e-12
        )

    def test_random_allocation_is_reproducible(self, handler, small_config):
        scenario = generate_scenario(small_config.scenario_config(6), seed=4)
        first = handler.run_rpa(scenario, small_config, seed=4, point=6)
        second = handler.run_rpa(scenario, small_config, seed=4, point=6)
        assert first == second

    def test_metrics_are_physical(self, handler, small_config):
        for record in handler.execute(RunMethodCommand(config=small_config, seed=1, point=8)):
            assert record.total_throughput > 0.0
            assert 0.0 <= record.edge_throughput <= record.total_throughput
            assert record.grid_power >= 0.0
            assert record.max_violation >= 0.0
