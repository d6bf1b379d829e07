"""Value Objects: perfil energético (red, cooperación) y violaciones de potencia."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class EnergyProfile:
    """
    Potencia tomada de la red G_i y transferencias ε_{ii'} entre estaciones.

    Cada vatio enviado i→i' entrega β vatios; (1−β) se pierde.
    """

    grid: NDArray[np.float64]
    """G_i ≥ 0 (W)"""

    shared: NDArray[np.float64]
    """ε_{ii'} ≥ 0 (W enviados de i a i'), diagonal nula"""

    beta: float = 0.8
    eta: float = 0.1
    """Peso de la potencia de red en el objetivo"""

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=np.float64)
        shared = np.array(self.shared, dtype=np.float64)
        grid.setflags(write=False)
        shared.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "shared", shared)

        n = grid.shape[0]
        if shared.shape != (n, n):
            raise ValueError(f"Shared table must be {n}x{n}, got {shared.shape}")

        if np.any(np.diag(shared) != 0.0):
            raise ValueError("A station cannot share power with itself")

        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")

        if self.eta < 0.0:
            raise ValueError("eta must be >= 0")

    @classmethod
    def no_sharing(
        cls, grid: NDArray[np.float64], beta: float = 0.8, eta: float = 0.1
    ) -> "EnergyProfile":
        """Perfil sin transferencias entre estaciones."""
        n = np.asarray(grid).shape[0]
        return cls(grid=grid, shared=np.zeros((n, n)), beta=beta, eta=eta)

    @property
    def inflow(self) -> NDArray[np.float64]:
        """Σ_{i'} ε_{i'i}: vatios enviados hacia cada estación."""
        return self.shared.sum(axis=0)

    @property
    def outflow(self) -> NDArray[np.float64]:
        """Σ_{i'} ε_{ii'}: vatios enviados desde cada estación."""
        return self.shared.sum(axis=1)

    @property
    def total_grid(self) -> float:
        return float(np.sum(self.grid))


@dataclass(frozen=True)
class PowerViolation:
    """Violación de C3 (presupuesto), C7 (signo) o C8 (tope de transmisión)."""

    station: int
    constraint: str
    margin: float

    def __str__(self) -> str:
        return f"{self.constraint} violated at station {self.station} by {self.margin:.6g} W"
