"""Pruebas de restricciones de potencia, potencia de red mínima y objetivo."""

import dataclasses

import numpy as np
import pytest

from src.domain.exceptions import DomainError, ScenarioMismatchError
from src.domain.model.energy_profile import EnergyProfile
from src.domain.model.run_record import RunRecord
from src.domain.service.energy import (
    EPS_STRICT,
    check_power_constraints,
    energy_saving_metric,
    min_grid_power,
    no_sharing_grid_power,
    objective_p1,
)
from tests.fixtures.oracles import lp_min_grid_power


def _record(method: str = "fpa", grid_power: float = 60.0, fingerprint: str = "abc") -> RunRecord:
    return RunRecord(
        method=method,
        seed=1,
        sweep_point=10.0,
        n_users=10,
        total_throughput=1e7,
        edge_throughput=1e5,
        objective_p1=10.0,
        grid_power=grid_power,
        energy_saving=0.0,
        iterations=1,
        max_violation=0.0,
        config_fingerprint="cfg",
        scenario_fingerprint=fingerprint,
    )


class TestCheckPowerConstraints:
    def test_zero_powers_are_feasible(self):
        profile = EnergyProfile.no_sharing(np.zeros(2))
        violations = check_power_constraints(
            np.zeros(2), profile, np.array([1.0, 1.0]), np.array([1.0, 1.0])
        )
        assert violations == []

    def test_cap_violation(self):
        profile = EnergyProfile.no_sharing(np.array([10.0]))
        violations = check_power_constraints(
            np.array([2.0]), profile, np.array([0.0]), np.array([1.0])
        )
        assert [v.constraint for v in violations] == ["C8"]
        assert violations[0].margin == pytest.approx(1.0)

    def test_budget_boundary_is_a_violation(self):
        shared = np.array([[0.0, 0.0], [1.0, 0.0]])
        profile = EnergyProfile(grid=np.zeros(2), shared=shared, beta=0.5)
        violations = check_power_constraints(
            np.array([1.0, 0.0]), profile, np.array([0.5, 1.5]), np.array([2.0, 2.0])
        )
        assert [(v.station, v.constraint) for v in violations] == [(0, "C3")]


class TestMinGridPower:
    def test_no_deficit(self):
        profile = min_grid_power(np.array([1.0, 2.0]), np.array([1.5, 3.0]), beta=0.8)
        assert profile.grid.tolist() == [EPS_STRICT, EPS_STRICT]
        assert not profile.shared.any()

    def test_one_surplus_one_deficit(self):
        profile = min_grid_power(np.array([1.0, 0.0]), np.array([0.0, 2.0]), beta=0.5)
        assert profile.shared[1, 0] == pytest.approx(2.0)
        assert profile.grid == pytest.approx([0.0, 0.0], abs=2 * EPS_STRICT)

    def test_lossless_balance_needs_margin_only(self):
        powers = np.array([3.0, 0.5, 2.0, 0.0])
        harvests = np.array([1.0, 2.5, 0.0, 2.0])
        profile = min_grid_power(powers, harvests, beta=1.0)
        assert profile.total_grid == pytest.approx(4 * EPS_STRICT, abs=1e-10)

    def test_beta_zero_disables_sharing(self):
        powers = np.array([2.0, 0.0])
        harvests = np.array([0.0, 5.0])
        profile = min_grid_power(powers, harvests, beta=0.0)
        assert not profile.shared.any()
        assert profile.grid == pytest.approx([2.0, 0.0], abs=2 * EPS_STRICT)

    def test_result_passes_constraints_and_matches_lp(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            n = int(rng.integers(1, 7))
            powers = rng.uniform(0.0, 5.0, size=n)
            harvests = rng.uniform(0.0, 5.0, size=n)
            beta = float(rng.uniform(0.05, 1.0))
            profile = min_grid_power(powers, harvests, beta)

            assert check_power_constraints(powers, profile, harvests, powers + 1.0) == []
            optimum = lp_min_grid_power(powers, harvests, beta)
            assert optimum - 1e-6 <= profile.total_grid <= optimum + n * EPS_STRICT + 1e-6

    def test_every_station_carries_the_margin(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            powers = rng.uniform(0.0, 3.0, size=n)
            harvests = rng.uniform(0.0, 3.0, size=n)
            profile = min_grid_power(powers, harvests, beta=0.7)
            assert np.all(profile.grid >= EPS_STRICT)

    def test_nonincreasing_in_beta(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(2, 6))
            powers = rng.uniform(0.0, 4.0, size=n)
            harvests = rng.uniform(0.0, 4.0, size=n)
            totals = [
                min_grid_power(powers, harvests, beta).total_grid
                for beta in np.linspace(0.0, 1.0, 11)
            ]
            for before, after in zip(totals, totals[1:]):
                assert after <= before + n * EPS_STRICT

    def test_without_sharing(self):
        powers = np.array([2.0, 0.5])
        harvests = np.array([0.5, 1.0])
        profile = no_sharing_grid_power(powers, harvests)
        assert profile.grid == pytest.approx([1.5 + EPS_STRICT, EPS_STRICT], abs=1e-15)

    @pytest.mark.parametrize(
        "powers, harvests, beta",
        [
            ([1.0], [1.0, 2.0], 0.5),
            ([-1.0], [1.0], 0.5),
            ([1.0], [1.0], 1.5),
        ],
    )
    def test_invalid_inputs(self, powers, harvests, beta):
        with pytest.raises(DomainError):
            min_grid_power(np.array(powers), np.array(harvests), beta)


class TestObjectiveP1:
    def test_single_user(self):
        assert objective_p1(np.array([[1]]), np.array([[1.0]]), np.zeros(1), 0.1) == 1.0

    def test_weighting_off(self):
        x = np.array([[1, 0], [0, 1]])
        utilities = np.array([[1.5, 0.0], [0.0, 2.5]])
        assert objective_p1(x, utilities, np.array([3.0, 4.0]), 0.0) == pytest.approx(4.0)

    def test_worked_example(self):
        x = np.array([[1, 1]])
        utilities = np.array([[1.0, 2.0]])
        assert objective_p1(x, utilities, np.array([2.0, 3.0]), 0.1) == pytest.approx(2.5)


class TestEnergySavingMetric:
    def test_same_run_saves_nothing(self):
        run = _record()
        assert energy_saving_metric(run, run) == 0.0

    def test_subtraction(self):
        baseline = _record(grid_power=60.0)
        run = dataclasses.replace(baseline, method="eecmec", grid_power=45.0)
        assert energy_saving_metric(run, baseline) == pytest.approx(15.0)

    def test_scenario_mismatch(self):
        with pytest.raises(ScenarioMismatchError):
            energy_saving_metric(_record(fingerprint="a"), _record(fingerprint="b"))
