"""Value Object: fila de resultados de una ejecución (método, semilla, punto)."""

from dataclasses import dataclass, fields
from enum import Enum


class Method(str, Enum):
    """Métodos comparados."""

    FPA = "fpa"
    RPA = "rpa"
    EECMEC = "eecmec"

    @property
    def order(self) -> int:
        return list(Method).index(self)


@dataclass(frozen=True)
class RunRecord:
    """
    Métricas de una ejecución sobre un escenario.

    El orden de los campos es el orden de columnas del CSV.
    """

    method: str
    seed: int
    sweep_point: float
    """Valor del eje de barrido (N o factor de potencia)"""

    n_users: int
    total_throughput: float
    """Σ_j R_j (bit/s)"""

    edge_throughput: float
    """Percentil 5 de la tasa por usuario (bit/s)"""

    objective_p1: float
    grid_power: float
    """Σ_i G_i (W)"""

    energy_saving: float
    """Σ G(FPA) − Σ G(método) (W)"""

    iterations: int
    max_violation: float
    config_fingerprint: str
    scenario_fingerprint: str

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def sort_key(self) -> tuple[int, int, float]:
        """Orden determinista (método, semilla, punto)."""
        return (Method(self.method).order, self.seed, self.sweep_point)
