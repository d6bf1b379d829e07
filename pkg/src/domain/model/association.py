"""Value Objects: estado dual, parámetros y resultado de la asociación."""

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray


def _frozen(values: NDArray[np.float64] | list[float]) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DualState:
    """
    Multiplicadores de Lagrange (μ_j por usuario, ν_i por estación).

    `step` es el δ(t) que usará el próximo paso; `t` cuenta los pasos dados.
    """

    mu: NDArray[np.float64]
    """Precio de C1 (SINR mínima), uno por usuario"""

    nu: NDArray[np.float64]
    """Precio del acoplamiento k_i = Σ_j x_ij, uno por estación"""

    t: int = 0
    step: float = 0.1
    step0: float = 0.1
    """δ₀ del esquema δ(t) = δ₀/√t"""

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _frozen(self.mu))
        object.__setattr__(self, "nu", _frozen(self.nu))

        if np.any(self.mu < 0.0):
            raise ValueError("Multipliers mu must be >= 0")

        if self.t < 0:
            raise ValueError("Iteration counter must be >= 0")

    @classmethod
    def initial(cls, n_users: int, n_stations: int, step0: float = 0.1) -> "DualState":
        """Estado inicial μ = 0, ν = 0, δ(1) = δ₀."""
        return cls(
            mu=np.zeros(n_users), nu=np.zeros(n_stations), t=0, step=step0, step0=step0
        )

    def advanced(self, mu: NDArray[np.float64], nu: NDArray[np.float64]) -> "DualState":
        """Nuevo estado tras un paso: t+1 y δ(t+1) = δ₀/√(t+1)."""
        t = self.t + 1
        return replace(self, mu=mu, nu=nu, t=t, step=self.step0 / np.sqrt(t + 1))


@dataclass(frozen=True)
class SolverParams:
    """Parámetros del método del subgradiente."""

    max_iter: int = 500
    step0: float = 0.1
    tolerance: float = 1e-6
    gamma_min: float = 0.1
    """SINR mínima lineal de C1 (−10 dB por defecto)"""

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be > 0")

        if self.step0 <= 0.0:
            raise ValueError("step0 must be > 0")

        if self.gamma_min < 0.0:
            raise ValueError("gamma_min must be >= 0")


@dataclass(frozen=True)
class IterationRecord:
    """Registro por iteración del solver dual."""

    iteration: int
    dual_value: float
    max_violation: float


@dataclass(frozen=True, eq=False)
class AssociationResult:
    """
    Resultado de la asociación (x, k) con diagnósticos del solver.

    `assignment[j]` es la estación del usuario j; `x` es la misma
    información como tabla binaria |B| × |U|.
    """

    assignment: NDArray[np.int64]
    k: NDArray[np.float64]
    dual_value: float
    """Mejor cota dual D(μ, ν) observada"""

    primal_objective: float
    iterations: int
    converged: bool
    max_violation: float
    history: tuple[IterationRecord, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        assignment = np.array(self.assignment, dtype=np.int64)
        assignment.setflags(write=False)
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "k", _frozen(self.k))

        if np.any(self.k < 0.0):
            raise ValueError("Loads k must be >= 0")

    @property
    def x(self) -> NDArray[np.int64]:
        table = np.zeros((self.k.shape[0], self.assignment.shape[0]), dtype=np.int64)
        table[self.assignment, np.arange(self.assignment.shape[0])] = 1
        return table

    @property
    def loads(self) -> NDArray[np.int64]:
        """Carga entera Σ_j x_ij."""
        return np.bincount(self.assignment, minlength=self.k.shape[0])


@dataclass(frozen=True, eq=False)
class BruteForceResult:
    """Óptimo exacto por enumeración."""

    assignment: NDArray[np.int64]
    value: float
    evaluated: int
