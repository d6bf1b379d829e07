"""Value Objects: estaciones, usuarios, canal y escenario."""

import hashlib
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import InvalidConfigError
from src.domain.model.catalog import Catalog


class StationTier(str, Enum):
    """Nivel de la estación base en la red heterogénea."""

    MACRO = "macro"
    SMALL = "small"


class Layout(str, Enum):
    """Distribución espacial de usuarios."""

    UNIFORM = "uniform"
    HOTSPOT = "hotspot"


@dataclass(frozen=True)
class BaseStation:
    """
    Estación base con caché y recolección de energía renovable.

    Todas las potencias en vatios lineales.
    """

    id: int
    """Identificador (índice i)"""

    tier: StationTier
    """Macro o small"""

    position: tuple[float, float]
    """Coordenadas (m)"""

    p_max: float
    """Potencia máxima de transmisión P_i^max (W)"""

    cache_size: int
    """Capacidad L_i (ficheros)"""

    harvest: float = 0.0
    """Energía renovable E_i disponible en el slot (W)"""

    static_power: float = 0.0
    """Potencia de circuito (W); solo metadata"""

    def __post_init__(self) -> None:
        """Valida los invariantes físicos."""
        if self.p_max <= 0.0:
            raise ValueError(f"Station {self.id}: p_max must be > 0")

        if self.cache_size < 0:
            raise ValueError(f"Station {self.id}: cache_size must be >= 0")

        if self.harvest < 0.0:
            raise ValueError(f"Station {self.id}: harvest must be >= 0")


@dataclass(frozen=True)
class UserEquipment:
    """Equipo de usuario j."""

    id: int
    position: tuple[float, float]


@dataclass(frozen=True, eq=False)
class ChannelState:
    """
    Ganancias lineales h_ij (estación i, usuario j) y potencia de ruido σ².

    Inmutable: la matriz se congela al construirse.
    """

    gain: NDArray[np.float64]
    """Tabla |B| × |U| de ganancias de potencia"""

    noise_power: float
    """σ² (W)"""

    def __post_init__(self) -> None:
        gain = np.array(self.gain, dtype=np.float64)
        gain.setflags(write=False)
        object.__setattr__(self, "gain", gain)

        if gain.ndim != 2:
            raise ValueError("Channel gain must be a 2-D table (stations x users)")

        if not np.all(gain > 0.0):
            raise ValueError("Every channel gain must be > 0")

        if self.noise_power <= 0.0:
            raise ValueError("Noise power must be > 0")


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    Unidad de todo experimento: estaciones, usuarios, catálogo y canal.

    Los tres métodos comparados sobre un mismo (config, seed) comparten
    exactamente el mismo escenario, lo que se verifica con fingerprint().
    """

    stations: tuple[BaseStation, ...]
    users: tuple[UserEquipment, ...]
    catalog: Catalog
    channel: ChannelState
    bandwidth: float
    """B (Hz)"""

    seed: int

    def __post_init__(self) -> None:
        """Valida dimensiones y conteos."""
        object.__setattr__(self, "stations", tuple(self.stations))
        object.__setattr__(self, "users", tuple(self.users))

        if not self.stations:
            raise InvalidConfigError("Scenario needs at least one station")

        if not self.users:
            raise InvalidConfigError("Scenario needs at least one user")

        if self.bandwidth <= 0.0:
            raise InvalidConfigError("Bandwidth must be > 0")

        expected = (len(self.stations), len(self.users))
        if self.channel.gain.shape != expected:
            raise InvalidConfigError(
                f"Channel gain shape {self.channel.gain.shape} does not match {expected}"
            )

    @property
    def num_stations(self) -> int:
        return len(self.stations)

    @property
    def num_users(self) -> int:
        return len(self.users)

    @property
    def p_max(self) -> NDArray[np.float64]:
        """Vector de P_i^max."""
        return np.array([s.p_max for s in self.stations], dtype=np.float64)

    @property
    def harvests(self) -> NDArray[np.float64]:
        """Vector de E_i."""
        return np.array([s.harvest for s in self.stations], dtype=np.float64)

    def fingerprint(self) -> str:
        """Hash sha256 de la realización (posiciones, canal, energía, caché)."""
        digest = hashlib.sha256()
        digest.update(str(self.seed).encode())
        digest.update(np.float64(self.bandwidth).tobytes())
        digest.update(np.float64(self.channel.noise_power).tobytes())
        digest.update(np.ascontiguousarray(self.channel.gain).tobytes())
        digest.update(np.ascontiguousarray(self.catalog.popularity).tobytes())
        for station in self.stations:
            digest.update(
                np.array(
                    [*station.position, station.p_max, station.cache_size, station.harvest],
                    dtype=np.float64,
                ).tobytes()
            )
        for user in self.users:
            digest.update(np.array(user.position, dtype=np.float64).tobytes())
        return digest.hexdigest()


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Parámetros de generación de escenarios (valores por defecto de la tabla de simulación).

    Potencias en dBm solo aquí; el generador convierte a vatios.
    """

    n_macro: int = 1
    n_small: int = 4
    n_users: int = 20
    area_size: float = 600.0
    """Lado del área cuadrada centrada en la macro (m)"""

    layout: Layout = Layout.UNIFORM
    hotspot_fraction: float = 0.5
    hotspot_radius: float = 50.0
    inter_site_distance: float = 250.0
    """Radio del anillo de small cells alrededor de la macro (m)"""

    macro_power_dbm: float = 43.0
    small_power_dbm: float = 30.0
    power_scale: float = 1.0
    """Multiplicador aplicado a todos los P_max"""

    macro_cache_size: int = 10
    small_cache_size: int = 5
    macro_static_power: float = 60.0
    small_static_power: float = 1.5
    bandwidth: float = 40e6
    pl0_db: float = 128.1
    pl_exponent: float = 3.76
    reference_distance: float = 1000.0
    min_distance: float = 1.0
    fading_floor: float = 1e-9
    noise_psd_dbm_hz: float = -174.0
    noise_figure_db: float = 9.0
    num_files: int = 20
    zipf_exponent: float = 0.8
    harvest_min_ratio: float = 0.2
    harvest_max_ratio: float = 1.2

    def __post_init__(self) -> None:
        """Valida rangos básicos; los conteos nulos se reportan en generate_scenario."""
        if self.area_size <= 0.0:
            raise InvalidConfigError("Area size must be > 0")

        if not 0.0 <= self.hotspot_fraction <= 1.0:
            raise InvalidConfigError("Hotspot fraction must lie in [0, 1]")

        if self.hotspot_radius <= 0.0:
            raise InvalidConfigError("Hotspot radius must be > 0")

        if self.hotspot_radius >= self.area_size / 2.0:
            raise InvalidConfigError("Hotspot radius must be below half the area size")

        if self.power_scale <= 0.0:
            raise InvalidConfigError("Power scale must be > 0")

        if self.bandwidth <= 0.0:
            raise InvalidConfigError("Bandwidth must be > 0")

        if self.min_distance <= 0.0 or self.reference_distance <= 0.0:
            raise InvalidConfigError("Distances must be > 0")

        if not 0.0 <= self.harvest_min_ratio <= self.harvest_max_ratio:
            raise InvalidConfigError("Harvest ratios must satisfy 0 <= min <= max")

    @property
    def n_stations(self) -> int:
        return self.n_macro + self.n_small
