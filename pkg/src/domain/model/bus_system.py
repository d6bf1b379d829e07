"""Value Objects: sistema de buses, estado de flujo de carga y traza CPF."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray


class BusType(str, Enum):
    """Tipo de bus en el flujo de carga."""

    SLACK = "slack"
    PV = "pv"
    PQ = "pq"


def _frozen(values: Any, dtype: Any = np.float64) -> NDArray[Any]:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Branch:
    """Línea π entre dos buses (índices internos, valores en p.u.)."""

    from_bus: int
    to_bus: int
    r: float
    x: float
    shunt: float = 0.0
    """Susceptancia shunt total de la línea"""

    def __post_init__(self) -> None:
        if self.from_bus == self.to_bus:
            raise ValueError("Branch endpoints must differ")

        if self.r == 0.0 and self.x == 0.0:
            raise ValueError("Branch impedance cannot be zero")


@dataclass(frozen=True, eq=False)
class BusSystem:
    """
    Red en p.u.: Ybus compleja, tipos de bus, inyecciones base y dirección de carga.

    La carga en el bus i es P_D0,i + λ·ΔP_i (análogo para Q).
    """

    bus_type: tuple[BusType, ...]
    ybus: NDArray[np.complex128]
    p_gen: NDArray[np.float64]
    q_gen: NDArray[np.float64]
    p_load: NDArray[np.float64]
    q_load: NDArray[np.float64]
    dp: NDArray[np.float64]
    dq: NDArray[np.float64]
    v0: NDArray[np.float64]
    """Módulo inicial / consigna (slack y PV)"""

    theta0: NDArray[np.float64]
    """Ángulo inicial (rad)"""

    bus_ids: tuple[int, ...] = field(default_factory=tuple)
    """Identificadores externos (fichero)"""

    def __post_init__(self) -> None:
        """Valida dimensiones, bus slack único y patrón simétrico de Ybus."""
        object.__setattr__(self, "bus_type", tuple(BusType(t) for t in self.bus_type))
        object.__setattr__(self, "ybus", _frozen(self.ybus, np.complex128))
        for name in ("p_gen", "q_gen", "p_load", "q_load", "dp", "dq", "v0", "theta0"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

        n = len(self.bus_type)
        if not self.bus_ids:
            object.__setattr__(self, "bus_ids", tuple(range(1, n + 1)))

        if self.ybus.shape != (n, n):
            raise ValueError(f"Ybus must be {n}x{n}, got {self.ybus.shape}")

        for name in ("p_gen", "q_gen", "p_load", "q_load", "dp", "dq", "v0", "theta0"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"Field {name} must have length {n}")

        if sum(t == BusType.SLACK for t in self.bus_type) != 1:
            raise ValueError("Bus system needs exactly one slack bus")

        pattern = self.ybus != 0
        if not np.array_equal(pattern, pattern.T):
            raise ValueError("Ybus sparsity pattern must be symmetric")

        if not np.all(np.isfinite(self.ybus)) or not np.all(np.isfinite(self.p_load)):
            raise ValueError("Per-unit quantities must be finite")

        if np.any(self.v0 <= 0.0):
            raise ValueError("Initial voltages must be > 0")

    @staticmethod
    def build_ybus(n: int, branches: Sequence[Branch]) -> NDArray[np.complex128]:
        """Ensambla Ybus con el modelo π de cada línea."""
        ybus = np.zeros((n, n), dtype=np.complex128)
        for branch in branches:
            y = 1.0 / complex(branch.r, branch.x)
            half_shunt = 0.5j * branch.shunt
            f, t = branch.from_bus, branch.to_bus
            ybus[f, f] += y + half_shunt
            ybus[t, t] += y + half_shunt
            ybus[f, t] -= y
            ybus[t, f] -= y
        return ybus

    @property
    def n(self) -> int:
        return len(self.bus_type)

    @property
    def slack(self) -> int:
        return self.bus_type.index(BusType.SLACK)

    @property
    def pq(self) -> NDArray[np.int64]:
        return np.array(
            [i for i, t in enumerate(self.bus_type) if t == BusType.PQ], dtype=np.int64
        )

    @property
    def pvpq(self) -> NDArray[np.int64]:
        return np.array(
            [i for i, t in enumerate(self.bus_type) if t != BusType.SLACK], dtype=np.int64
        )

    @property
    def has_direction(self) -> bool:
        """False si la dirección de incremento de carga es nula."""
        return bool(np.any(self.dp[self.pvpq] != 0.0) or np.any(self.dq[self.pq] != 0.0))


@dataclass(frozen=True, eq=False)
class PFState:
    """Estado (θ, V, λ) del flujo de carga continuado."""

    theta: NDArray[np.float64]
    v: NDArray[np.float64]
    lam: float = 0.0
    """Factor de carga λ"""

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", _frozen(self.theta))
        object.__setattr__(self, "v", _frozen(self.v))

        if self.theta.shape != self.v.shape:
            raise ValueError("theta and v must have the same length")

        if np.any(self.v <= 0.0):
            raise ValueError("Voltage magnitudes must be > 0")

    @classmethod
    def initial(cls, system: BusSystem) -> "PFState":
        """Arranque desde V0/θ0 del sistema (slack a ángulo 0)."""
        theta = np.array(system.theta0, dtype=np.float64)
        theta[system.slack] = 0.0
        return cls(theta=theta, v=system.v0, lam=0.0)

    @property
    def complex_voltage(self) -> NDArray[np.complex128]:
        return self.v * np.exp(1j * self.theta)


@dataclass(frozen=True)
class CPFStep:
    """Diagnóstico de un paso aceptado."""

    sigma: float
    index: int
    """Índice de la variable de continuación (el último es λ)"""

    iterations: int


@dataclass(frozen=True)
class CPFTrace:
    """Puntos convergidos de la curva λ–V y su punto de máxima cargabilidad."""

    points: tuple[PFState, ...]
    nose: PFState
    step_log: tuple[CPFStep, ...] = ()

    @property
    def lambda_max(self) -> float:
        return self.nose.lam

    @property
    def lambdas(self) -> NDArray[np.float64]:
        return np.array([p.lam for p in self.points], dtype=np.float64)
