"""Pruebas de generación de escenarios."""

import math

import numpy as np
import pytest

from src.domain.exceptions import InvalidConfigError
from src.domain.model.network import Layout, ScenarioConfig, StationTier
from src.domain.service.scenario_generator import generate_scenario


class TestGenerateScenario:
    def test_default_counts(self):
        scenario = generate_scenario(ScenarioConfig(n_users=20), seed=7)
        assert scenario.num_stations == 5
        assert scenario.num_users == 20
        assert scenario.stations[0].tier == StationTier.MACRO
        assert all(s.tier == StationTier.SMALL for s in scenario.stations[1:])

    def test_reproducible_for_fixed_seed(self):
        first = generate_scenario(ScenarioConfig(), seed=7)
        second = generate_scenario(ScenarioConfig(), seed=7)
        assert [u.position for u in first.users] == [u.position for u in second.users]
        assert np.array_equal(first.channel.gain, second.channel.gain)
        assert first.fingerprint() == second.fingerprint()

    def test_seed_sensitivity(self):
        first = generate_scenario(ScenarioConfig(), seed=1)
        second = generate_scenario(ScenarioConfig(), seed=2)
        assert [u.position for u in first.users] != [u.position for u in second.users]
        assert first.fingerprint() != second.fingerprint()

    def test_hotspot_places_exact_fraction(self):
        config = ScenarioConfig(n_users=20, layout=Layout.HOTSPOT, hotspot_fraction=0.5)
        for seed in range(5):
            scenario = generate_scenario(config, seed=seed)
            counts = [
                sum(
                    math.dist(user.position, station.position) <= config.hotspot_radius
                    for user in scenario.users
                )
                for station in scenario.stations
                if station.tier == StationTier.SMALL
            ]
            assert 10 in counts

    def test_wide_hotspot_still_places_every_user(self):
        config = ScenarioConfig(n_users=12, layout=Layout.HOTSPOT, hotspot_radius=290.0)
        scenario = generate_scenario(config, seed=3)
        assert scenario.num_users == 12

    def test_hotspot_covering_the_area_is_rejected(self):
        with pytest.raises(InvalidConfigError, match="Hotspot radius"):
            ScenarioConfig(n_users=4, layout=Layout.HOTSPOT, hotspot_radius=700.0)

    def test_powers_and_harvest_ranges(self):
        config = ScenarioConfig(power_scale=0.5)
        scenario = generate_scenario(config, seed=3)
        macro, small = scenario.stations[0], scenario.stations[1]
        assert macro.p_max == pytest.approx(0.5 * 10 ** 1.3)
        assert small.p_max == pytest.approx(0.5)
        for station in scenario.stations:
            base = station.p_max / config.power_scale
            assert config.harvest_min_ratio * base <= station.harvest
            assert station.harvest <= config.harvest_max_ratio * base

    def test_gains_are_positive(self):
        scenario = generate_scenario(ScenarioConfig(n_users=30), seed=11)
        assert np.all(scenario.channel.gain > 0.0)
        assert scenario.channel.noise_power > 0.0

    @pytest.mark.parametrize(
        "overrides",
        [{"n_users": 0}, {"n_macro": 0, "n_small": 0}],
    )
    def test_empty_counts_raise(self, overrides):
        with pytest.raises(InvalidConfigError):
            generate_scenario(ScenarioConfig(**overrides), seed=1)
