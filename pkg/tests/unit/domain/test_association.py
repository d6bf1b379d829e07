"""Pruebas del solver dual de asociación."""

import math

import numpy as np
import pytest

from src.domain.exceptions import (
    DomainError,
    GuardError,
    InfeasibleScenarioError,
    NoFeasibleStationError,
)
from src.domain.model.association import DualState, SolverParams
from src.domain.service.association import (
    associate_user,
    brute_force_association,
    optimal_k,
    solve_p21,
    subgradient_step,
)
from src.domain.service.caching import build_policy
from src.domain.service.lambert import lambert_w0


def _state(mu, nu, step=0.1) -> DualState:
    return DualState(mu=np.array(mu, dtype=float), nu=np.array(nu, dtype=float), step=step)


def _random_instance(make_scenario, rng: np.random.Generator):
    n_stations = int(rng.integers(1, 4))
    n_users = int(rng.integers(1, 7))
    scenario = make_scenario(
        rng.uniform(0.1, 2.0, size=(n_stations, n_users)),
        p_max=rng.uniform(0.5, 2.0, size=n_stations),
        cache_sizes=rng.integers(1, 3, size=n_stations),
    )
    return scenario, build_policy(scenario.catalog, scenario.stations)


class TestAssociateUser:
    def test_single_station(self):
        state = _state([5.0], [100.0])
        assert associate_user(0, np.array([2.0]), np.array([0.1]), state) == 0

    def test_lower_price_wins(self):
        state = _state([0.0], [0.1, 0.5])
        assert associate_user(0, np.array([3.0, 3.0]), np.array([1.0, 1.0]), state) == 0

    def test_tie_broken_by_lowest_index(self):
        c = np.exp(np.array([1.0, 2.0, 0.0]))
        gamma = np.array([2.0, 1.0, 3.0])
        assert associate_user(0, c, gamma, _state([1.0], [0.0, 0.0, 0.0])) == 0

    def test_invariant_under_common_shift(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            c = rng.uniform(0.5, 5.0, size=4)
            gamma = rng.uniform(0.0, 3.0, size=4)
            nu = rng.uniform(0.0, 2.0, size=4)
            mu = [float(rng.uniform(0.0, 1.0))]
            base = associate_user(0, c, gamma, _state(mu, nu))
            assert associate_user(0, c, gamma, _state(mu, nu + 7.5)) == base

    def test_nonpositive_capacity_excluded(self):
        state = _state([0.0], [0.0, 0.0])
        assert associate_user(0, np.array([0.0, 0.5]), np.array([9.0, 0.1]), state) == 1

    def test_no_admissible_station(self):
        with pytest.raises(NoFeasibleStationError):
            associate_user(0, np.array([0.0, -1.0]), np.array([1.0, 1.0]), _state([0.0], [0, 0]))


class TestOptimalK:
    def test_full_hit_probability(self):
        assert optimal_k(1.0, 1.0) == pytest.approx(1.0)

    def test_lambert_case(self):
        assert optimal_k(math.exp(-0.5), 1.0) == pytest.approx(lambert_w0(1.0), rel=1e-12)

    def test_stationarity_and_concavity(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            s = float(rng.uniform(0.05, 1.0))
            nu = float(rng.uniform(-3.0, 5.0))
            k = optimal_k(s, nu)
            assert k > 0.0
            assert abs(2.0 * k * math.log(s) - math.log(k) - 1.0 + nu) <= 1e-9
            assert 2.0 * math.log(s) - 1.0 / k < 0.0

    @pytest.mark.parametrize("s", [0.0, -0.2, 1.5])
    def test_invalid_hit_probability(self, s):
        with pytest.raises(DomainError):
            optimal_k(s, 0.0)


class TestSubgradientStep:
    def test_zero_violation_keeps_multipliers(self):
        state = _state([0.3], [1.2], step=1.0)
        after = subgradient_step(
            state, np.array([[1]]), np.array([1.0]), np.array([[0.1]]), 0.1, np.array([1])
        )
        assert after.mu == pytest.approx([0.3])
        assert after.nu == pytest.approx([1.2])
        assert after.t == 1

    def test_projection_of_mu(self):
        state = _state([0.1], [0.0], step=1.0)
        after = subgradient_step(
            state, np.array([[1]]), np.array([1.0]), np.array([[0.6]]), 0.1, np.array([1])
        )
        assert after.mu.tolist() == [0.0]

    def test_nu_update(self):
        state = _state([0.0], [2.0], step=0.5)
        after = subgradient_step(
            state, np.array([[1]]), np.array([2.0]), np.array([[0.1]]), 0.1, np.array([1])
        )
        assert after.nu == pytest.approx([1.5])

    def test_diminishing_schedule(self):
        state = DualState.initial(1, 1, step0=0.1)
        for _ in range(3):
            state = subgradient_step(
                state, np.array([[1]]), np.array([1.0]), np.array([[1.0]]), 0.1, np.array([1])
            )
        assert state.t == 3
        assert state.step == pytest.approx(0.1 / 2.0)

    def test_multipliers_stay_nonnegative(self):
        rng = np.random.default_rng(4)
        state = DualState.initial(3, 2, step0=1.0)
        for _ in range(30):
            state = subgradient_step(
                state,
                np.array([[1, 0, 1], [0, 1, 0]]),
                rng.uniform(0.0, 3.0, size=2),
                rng.uniform(0.0, 2.0, size=(2, 3)),
                1.0,
                np.array([2, 1]),
            )
            assert np.all(state.mu >= 0.0)
            assert np.all(state.nu >= 0.0)


class TestSolveP21:
    def test_single_station(self, make_scenario):
        scenario = make_scenario([[1.0, 2.0, 0.5]])
        placement = build_policy(scenario.catalog, scenario.stations)
        result = solve_p21(scenario, placement)
        exact = brute_force_association(scenario, placement)

        assert result.assignment.tolist() == [0, 0, 0]
        assert math.isfinite(result.dual_value)
        assert result.primal_objective == pytest.approx(exact.value, rel=1e-12)
        assert result.history[-1].max_violation < result.history[0].max_violation

    def test_symmetric_split(self, make_scenario):
        scenario = make_scenario([[4.0, 4.0, 1.0, 1.0], [1.0, 1.0, 4.0, 4.0]])
        placement = build_policy(scenario.catalog, scenario.stations)
        result = solve_p21(scenario, placement)
        assert result.loads.tolist() == [2, 2]
        assert result.x.sum(axis=0).tolist() == [1, 1, 1, 1]

    def test_reproducible(self, make_scenario):
        rng = np.random.default_rng(42)
        scenario, placement = _random_instance(make_scenario, rng)
        first = solve_p21(scenario, placement)
        second = solve_p21(scenario, placement)
        assert np.array_equal(first.assignment, second.assignment)
        assert first.history == second.history

    def test_respects_max_iter(self, make_scenario):
        scenario = make_scenario([[1.0, 2.0], [2.0, 1.0]])
        placement = build_policy(scenario.catalog, scenario.stations)
        result = solve_p21(scenario, placement, SolverParams(max_iter=7))
        assert result.iterations <= 7
        assert len(result.history) == result.iterations

    def test_weak_duality_and_gap(self, make_scenario):
        rng = np.random.default_rng(42)
        params = SolverParams(gamma_min=0.01)
        close = 0
        for _ in range(50):
            scenario, placement = _random_instance(make_scenario, rng)
            result = solve_p21(scenario, placement, params)
            exact = brute_force_association(scenario, placement, gamma_min=0.01)

            assert result.dual_value >= exact.value - 1e-9 * max(1.0, abs(exact.value))
            assert result.primal_objective <= exact.value + 1e-9 * max(1.0, abs(exact.value))
            gap = (exact.value - result.primal_objective) / max(1.0, abs(exact.value))
            close += gap <= 0.05

        assert close >= 45

    def test_dual_value_is_tightest_bound_seen(self, make_scenario):
        rng = np.random.default_rng(7)
        for _ in range(10):
            scenario, placement = _random_instance(make_scenario, rng)
            result = solve_p21(scenario, placement, SolverParams(gamma_min=0.01))
            assert result.dual_value == min(r.dual_value for r in result.history)

    def test_recovered_assignment_never_worse_than_first_iterate(self, make_scenario):
        rng = np.random.default_rng(11)
        for _ in range(10):
            scenario, placement = _random_instance(make_scenario, rng)
            first = solve_p21(scenario, placement, SolverParams(gamma_min=0.01, max_iter=1))
            full = solve_p21(scenario, placement, SolverParams(gamma_min=0.01))
            assert full.primal_objective >= first.primal_objective

    def test_no_admissible_station(self, make_scenario):
        scenario = make_scenario([[1.0, 1.0]], cache_sizes=[0])
        placement = build_policy(scenario.catalog, scenario.stations)
        with pytest.raises(InfeasibleScenarioError):
            solve_p21(scenario, placement)


class TestBruteForce:
    def test_two_by_two_enumerates_four(self, make_scenario):
        scenario = make_scenario([[2.0, 1.0], [1.0, 2.0]])
        placement = build_policy(scenario.catalog, scenario.stations)
        result = brute_force_association(scenario, placement, gamma_min=0.0)
        assert result.evaluated == 4
        assert result.assignment.tolist() == [0, 1]

    def test_guard(self, make_scenario):
        scenario = make_scenario(np.ones((3, 13)))
        placement = build_policy(scenario.catalog, scenario.stations)
        with pytest.raises(GuardError):
            brute_force_association(scenario, placement)

    def test_no_assignment_meets_minimum_sinr(self, make_scenario):
        scenario = make_scenario([[1.0]], noise_power=100.0)
        placement = build_policy(scenario.catalog, scenario.stations)
        with pytest.raises(InfeasibleScenarioError):
            brute_force_association(scenario, placement, gamma_min=0.1)
