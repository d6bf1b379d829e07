"""Fixtures compartidas por las pruebas."""

from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import pytest

from src.domain.model.catalog import Catalog
from src.domain.model.experiment_config import ExperimentConfig
from src.domain.model.network import (
    BaseStation,
    ChannelState,
    Scenario,
    StationTier,
    UserEquipment,
)
from src.infrastructure.config.dependency_injection import DIContainer

REPO_ROOT = Path(__file__).resolve().parent.parent
BUS_DIR = REPO_ROOT / "config" / "buses"

ScenarioFactory = Callable[..., Scenario]


@pytest.fixture
def make_scenario() -> ScenarioFactory:
    """
    Fábrica de escenarios a partir de una tabla de ganancias.

    Las estaciones se colocan en una recta y los usuarios en el origen;
    las posiciones no intervienen en ningún cálculo salvo el fingerprint.
    """

    def factory(
        gain: Sequence[Sequence[float]],
        p_max: Sequence[float] | None = None,
        harvest: Sequence[float] | None = None,
        cache_sizes: Sequence[int] | None = None,
        popularity: Sequence[float] | None = None,
        bandwidth: float = 1e7,
        noise_power: float = 1.0,
        seed: int = 0,
    ) -> Scenario:
        table = np.asarray(gain, dtype=np.float64)
        n_stations, n_users = table.shape
        p_max = p_max if p_max is not None else [1.0] * n_stations
        harvest = harvest if harvest is not None else [0.0] * n_stations
        cache_sizes = cache_sizes if cache_sizes is not None else [1] * n_stations
        popularity = popularity if popularity is not None else [0.5, 0.3, 0.2]

        stations = tuple(
            BaseStation(
                id=i,
                tier=StationTier.MACRO if i == 0 else StationTier.SMALL,
                position=(100.0 * i, 0.0),
                p_max=float(p_max[i]),
                cache_size=int(cache_sizes[i]),
                harvest=float(harvest[i]),
            )
            for i in range(n_stations)
        )
        users = tuple(UserEquipment(id=j, position=(0.0, float(j))) for j in range(n_users))
        return Scenario(
            stations=stations,
            users=users,
            catalog=Catalog(num_files=len(popularity), popularity=np.array(popularity)),
            channel=ChannelState(gain=table, noise_power=noise_power),
            bandwidth=bandwidth,
            seed=seed,
        )

    return factory


@pytest.fixture
def small_config() -> ExperimentConfig:
    """Experimento reducido: 2 semillas, 2 puntos y solver corto."""
    return ExperimentConfig.model_validate(
        {
            "solver": {"max_iter": 60},
            "experiment": {"seeds": [1, 2], "sweep_values": [6, 8], "output_prefix": "test"},
        }
    )


@pytest.fixture
def default_config_file() -> Path:
    return REPO_ROOT / "config" / "ee-cmec.yaml"


@pytest.fixture
def twobus_file() -> Path:
    return BUS_DIR / "twobus.txt"


@pytest.fixture
def fivebus_file() -> Path:
    return BUS_DIR / "fivebus.txt"


@pytest.fixture(autouse=True)
def reset_container():
    """Cada prueba parte de un contenedor limpio."""
    DIContainer.reset()
    yield
    DIContainer.reset()
