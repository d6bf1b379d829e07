"""Modelo de configuración de experimentos (validado con Pydantic)."""

import hashlib
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.domain.model.association import SolverParams
from src.domain.model.network import Layout, ScenarioConfig
from src.domain.model.run_record import Method


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ScenarioSection(_Section):
    """Geometría y estaciones (tabla de parámetros de simulación)."""

    n_macro: int = Field(default=1, ge=0)
    n_small: int = Field(default=4, ge=0)
    n_users: int = Field(default=20, ge=0)
    area_size_m: float = Field(default=600.0, gt=0)
    layout: Layout = Layout.UNIFORM
    hotspot_fraction: float = Field(default=0.5, ge=0.0, le=1.0)
    hotspot_radius_m: float = Field(default=50.0, gt=0)
    inter_site_distance_m: float = Field(default=250.0, gt=0)
    macro_power_dbm: float = 43.0
    small_power_dbm: float = 30.0
    macro_static_power_w: float = Field(default=60.0, ge=0)
    small_static_power_w: float = Field(default=1.5, ge=0)
    bandwidth_hz: float = Field(default=40e6, gt=0)

    @model_validator(mode="after")
    def _hotspot_fits(self) -> "ScenarioSection":
        if self.hotspot_radius_m >= self.area_size_m / 2.0:
            raise ValueError("hotspot_radius_m must be below half of area_size_m")
        return self


class ChannelSection(_Section):
    """Ley de pérdidas log-distancia, fading y ruido."""

    pl0_db: float = 128.1
    pl_exponent: float = Field(default=3.76, gt=0)
    reference_distance_m: float = Field(default=1000.0, gt=0)
    min_distance_m: float = Field(default=1.0, gt=0)
    fading_floor: float = Field(default=1e-9, gt=0)
    noise_psd_dbm_hz: float = -174.0
    noise_figure_db: float = Field(default=9.0, ge=0)


class CatalogSection(_Section):
    num_files: int = Field(default=20, ge=1)
    zipf_exponent: float = Field(default=0.8, ge=0)
    macro_cache_size: int = Field(default=10, ge=0)
    small_cache_size: int = Field(default=5, ge=0)


class EnergySection(_Section):
    """Cooperación energética y ley de recolección E_i ~ U[min, max]·P_max."""

    beta: float = Field(default=0.8, ge=0.0, le=1.0)
    eta: float = Field(default=0.1, ge=0.0)
    power_sharing: bool = True
    harvest_min_ratio: float = Field(default=0.2, ge=0.0)
    harvest_max_ratio: float = Field(default=1.2, ge=0.0)

    @model_validator(mode="after")
    def _ordered_ratios(self) -> "EnergySection":
        if self.harvest_min_ratio > self.harvest_max_ratio:
            raise ValueError("harvest_min_ratio must not exceed harvest_max_ratio")
        return self


class SolverSection(_Section):
    max_iter: int = Field(default=500, ge=1)
    step0: float = Field(default=0.1, gt=0)
    tolerance: float = Field(default=1e-6, gt=0)
    gamma_min_db: float = -10.0


class RPASection(_Section):
    max_redraws: int = Field(default=50, ge=1)


class CPFSection(_Section):
    sigma0: float = Field(default=0.1, gt=0)
    stop_fraction: float = Field(default=0.5, ge=0.0, lt=1.0)
    max_points: int = Field(default=500, ge=2)


class ExperimentSection(_Section):
    """Métodos, semillas y eje de barrido."""

    methods: tuple[Method, ...] = (Method.FPA, Method.RPA, Method.EECMEC)
    seeds: tuple[int, ...] = (1, 2, 3, 4, 5)
    sweep_axis: Literal["n_users", "power_scale"] = "n_users"
    sweep_values: tuple[float, ...] = (10, 20, 30)
    workers: int = Field(default=1, ge=1)
    output_prefix: str = "sweep"

    @field_validator("seeds")
    @classmethod
    def _at_least_one_seed(cls, seeds: tuple[int, ...]) -> tuple[int, ...]:
        if not seeds:
            raise ValueError("At least one seed is required")
        return seeds

    @field_validator("methods", "sweep_values")
    @classmethod
    def _not_empty(cls, values: tuple[Any, ...]) -> tuple[Any, ...]:
        if not values:
            raise ValueError("List cannot be empty")
        return values


class ExperimentConfig(_Section):
    """
    Configuración completa de un experimento.

    `unused` guarda las filas de la tabla de parámetros sin ecuación
    asociada; se conservan como metadata y no afectan a ningún cálculo.
    """

    scenario: ScenarioSection = Field(default_factory=ScenarioSection)
    channel: ChannelSection = Field(default_factory=ChannelSection)
    catalog: CatalogSection = Field(default_factory=CatalogSection)
    energy: EnergySection = Field(default_factory=EnergySection)
    solver: SolverSection = Field(default_factory=SolverSection)
    rpa: RPASection = Field(default_factory=RPASection)
    cpf: CPFSection = Field(default_factory=CPFSection)
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    unused: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _valid_sweep(self) -> "ExperimentConfig":
        values = self.experiment.sweep_values
        if self.experiment.sweep_axis == "n_users":
            if any(v < 1 or float(v) != int(v) for v in values):
                raise ValueError("n_users sweep values must be positive integers")
        elif any(v <= 0 for v in values):
            raise ValueError("power_scale sweep values must be > 0")
        return self

    def scenario_config(self, point: float | None = None) -> ScenarioConfig:
        """
        ScenarioConfig para un punto del barrido (o el escenario base).

        Args:
            point: Valor del eje de barrido; None usa n_users y escala 1
        """
        n_users = self.scenario.n_users
        power_scale = 1.0
        if point is not None:
            if self.experiment.sweep_axis == "n_users":
                n_users = int(point)
            else:
                power_scale = float(point)

        sc, ch, cat, en = self.scenario, self.channel, self.catalog, self.energy
        return ScenarioConfig(
            n_macro=sc.n_macro,
            n_small=sc.n_small,
            n_users=n_users,
            area_size=sc.area_size_m,
            layout=sc.layout,
            hotspot_fraction=sc.hotspot_fraction,
            hotspot_radius=sc.hotspot_radius_m,
            inter_site_distance=sc.inter_site_distance_m,
            macro_power_dbm=sc.macro_power_dbm,
            small_power_dbm=sc.small_power_dbm,
            power_scale=power_scale,
            macro_cache_size=cat.macro_cache_size,
            small_cache_size=cat.small_cache_size,
            macro_static_power=sc.macro_static_power_w,
            small_static_power=sc.small_static_power_w,
            bandwidth=sc.bandwidth_hz,
            pl0_db=ch.pl0_db,
            pl_exponent=ch.pl_exponent,
            reference_distance=ch.reference_distance_m,
            min_distance=ch.min_distance_m,
            fading_floor=ch.fading_floor,
            noise_psd_dbm_hz=ch.noise_psd_dbm_hz,
            noise_figure_db=ch.noise_figure_db,
            num_files=cat.num_files,
            zipf_exponent=cat.zipf_exponent,
            harvest_min_ratio=en.harvest_min_ratio,
            harvest_max_ratio=en.harvest_max_ratio,
        )

    def solver_params(self) -> SolverParams:
        """Parámetros del solver dual (γ_min convertido a lineal)."""
        return SolverParams(
            max_iter=self.solver.max_iter,
            step0=self.solver.step0,
            tolerance=self.solver.tolerance,
            gamma_min=10.0 ** (self.solver.gamma_min_db / 10.0),
        )

    def fingerprint(
        self, seed: int, point: float | None = None, method: Method | None = None
    ) -> str:
        """sha256 de la configuración resuelta más (seed, punto, método)."""
        payload = self.model_dump_json(
            exclude={"unused": True, "experiment": {"workers", "output_prefix"}}
        )
        digest = hashlib.sha256(payload.encode())
        method_name = method.value if method is not None else None
        digest.update(f"|seed={seed}|point={point!r}|method={method_name}".encode())
        return digest.hexdigest()
