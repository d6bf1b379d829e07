"""Servicio de dominio: generación reproducible de escenarios."""

import logging
import math

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import InvalidConfigError
from src.domain.model.network import (
    BaseStation,
    ChannelState,
    Layout,
    Scenario,
    ScenarioConfig,
    StationTier,
    UserEquipment,
)
from src.domain.service.caching import make_catalog
from src.domain.service.radio import channel_gain, dbm_to_watts, noise_power

logger = logging.getLogger(__name__)


def _station_sites(config: ScenarioConfig) -> list[tuple[StationTier, tuple[float, float]]]:
    """Macro(s) en el centro, small cells en un anillo de radio inter-site."""
    sites: list[tuple[StationTier, tuple[float, float]]] = []

    for m in range(config.n_macro):
        if m == 0:
            sites.append((StationTier.MACRO, (0.0, 0.0)))
        else:
            angle = 2.0 * math.pi * (m - 1) / max(config.n_macro - 1, 1)
            radius = 2.0 * config.inter_site_distance
            sites.append((StationTier.MACRO, (radius * math.cos(angle), radius * math.sin(angle))))

    for n in range(config.n_small):
        angle = 2.0 * math.pi * n / config.n_small
        radius = config.inter_site_distance
        sites.append((StationTier.SMALL, (radius * math.cos(angle), radius * math.sin(angle))))

    return sites


def _uniform_points(
    rng: np.random.Generator, count: int, half: float
) -> NDArray[np.float64]:
    return rng.uniform(-half, half, size=(count, 2))


def _hotspot_points(
    rng: np.random.Generator,
    count: int,
    config: ScenarioConfig,
    centres: list[tuple[float, float]],
) -> NDArray[np.float64]:
    """
    Coloca round(fracción·N) usuarios dentro del disco del hotspot y el resto fuera.

    El resto se muestrea uniforme en el área por rechazo, de modo que el
    conteo dentro del disco es exacto.
    """
    half = config.area_size / 2.0
    centre = np.array(centres[int(rng.integers(len(centres)))], dtype=np.float64)
    n_hot = int(round(config.hotspot_fraction * count))

    radius = config.hotspot_radius * np.sqrt(rng.uniform(0.0, 1.0, size=n_hot))
    angle = rng.uniform(0.0, 2.0 * math.pi, size=n_hot)
    inside = centre + np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))

    outside: list[NDArray[np.float64]] = []
    while len(outside) < count - n_hot:
        candidate = rng.uniform(-half, half, size=2)
        if np.hypot(*(candidate - centre)) > config.hotspot_radius:
            outside.append(candidate)

    rest = np.array(outside, dtype=np.float64).reshape(-1, 2)
    return np.vstack((inside, rest))


def generate_scenario(config: ScenarioConfig, seed: int) -> Scenario:
    """
    Genera un escenario determinista para (config, seed).

    Orden de sorteos: posiciones de usuarios, fading por enlace y
    energía renovable por estación. Cambiar el orden cambia todas las
    realizaciones.

    Raises:
        InvalidConfigError: Si no hay estaciones o usuarios
    """
    if config.n_stations < 1:
        raise InvalidConfigError("Scenario needs at least one station")

    if config.n_users < 1:
        raise InvalidConfigError("Scenario needs at least one user")

    rng = np.random.default_rng(seed)
    sites = _station_sites(config)

    if config.layout == Layout.HOTSPOT:
        centres = [pos for tier, pos in sites if tier == StationTier.SMALL] or [
            pos for _, pos in sites
        ]
        points = _hotspot_points(rng, config.n_users, config, centres)
    else:
        points = _uniform_points(rng, config.n_users, config.area_size / 2.0)

    users = tuple(
        UserEquipment(id=j, position=(float(x), float(y))) for j, (x, y) in enumerate(points)
    )

    fading = rng.exponential(1.0, size=(len(sites), config.n_users))
    harvest_ratio = rng.uniform(
        config.harvest_min_ratio, config.harvest_max_ratio, size=len(sites)
    )

    stations = []
    for i, (tier, position) in enumerate(sites):
        is_macro = tier == StationTier.MACRO
        base_power = dbm_to_watts(config.macro_power_dbm if is_macro else config.small_power_dbm)
        stations.append(
            BaseStation(
                id=i,
                tier=tier,
                position=position,
                p_max=base_power * config.power_scale,
                cache_size=config.macro_cache_size if is_macro else config.small_cache_size,
                harvest=float(harvest_ratio[i] * base_power),
                static_power=config.macro_static_power if is_macro else config.small_static_power,
            )
        )

    gain = np.array(
        [
            [
                channel_gain(
                    station,
                    user,
                    float(fading[i, j]),
                    pl0_db=config.pl0_db,
                    exponent=config.pl_exponent,
                    reference_distance=config.reference_distance,
                    min_distance=config.min_distance,
                    fading_floor=config.fading_floor,
                )
                for j, user in enumerate(users)
            ]
            for i, station in enumerate(stations)
        ],
        dtype=np.float64,
    )

    channel = ChannelState(
        gain=gain,
        noise_power=noise_power(
            config.bandwidth, config.noise_psd_dbm_hz, config.noise_figure_db
        ),
    )

    scenario = Scenario(
        stations=tuple(stations),
        users=users,
        catalog=make_catalog(config.num_files, config.zipf_exponent),
        channel=channel,
        bandwidth=config.bandwidth,
        seed=seed,
    )
    logger.debug(
        "Scenario seed=%d: %d stations, %d users, layout=%s",
        seed,
        scenario.num_stations,
        scenario.num_users,
        config.layout.value,
    )
    return scenario
