"""Value Objects: red de relés para el análisis de outage."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray


def _frozen(values: object) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RelayNetwork:
    """
    N fuentes, M relés y destino común bajo Rayleigh independiente no idéntico.

    Se seleccionan los K mejores enlaces directos y hasta L relés.
    """

    var_sd: NDArray[np.float64]
    """σ² de cada enlace fuente→destino (N)"""

    var_sr: NDArray[np.float64]
    """σ² fuente→relé (N × M)"""

    var_rd: NDArray[np.float64]
    """σ² relé→destino (M)"""

    rho: float
    """SNR de transmisión ρ (lineal)"""

    r0: float
    """Tasa objetivo R₀ (bit/uso de canal)"""

    k_sel: int
    l_sel: int

    def __post_init__(self) -> None:
        """Valida dimensiones e invariantes."""
        var_sd = _frozen(self.var_sd)
        var_rd = _frozen(self.var_rd)
        var_sr = _frozen(self.var_sr).reshape(var_sd.shape[0], var_rd.shape[0])
        object.__setattr__(self, "var_sd", var_sd)
        object.__setattr__(self, "var_rd", var_rd)
        object.__setattr__(self, "var_sr", _frozen(var_sr))

        if var_sd.ndim != 1 or var_sd.shape[0] < 1:
            raise ValueError("Need at least one source")

        for name, values in (("var_sd", var_sd), ("var_sr", var_sr), ("var_rd", var_rd)):
            if not np.all(values > 0.0):
                raise ValueError(f"All variances in {name} must be > 0")

        if self.rho <= 0.0:
            raise ValueError("rho must be > 0")

        if self.r0 < 0.0:
            raise ValueError("r0 must be >= 0")

        if not 1 <= self.k_sel <= self.n_sources:
            raise ValueError(f"K must satisfy 1 <= K <= N={self.n_sources}")

        if not 0 <= self.l_sel <= self.n_relays:
            raise ValueError(f"L must satisfy 0 <= L <= M={self.n_relays}")

    @property
    def n_sources(self) -> int:
        return int(self.var_sd.shape[0])

    @property
    def n_relays(self) -> int:
        return int(self.var_rd.shape[0])

    @property
    def lam_sd(self) -> NDArray[np.float64]:
        """λ_{S_nD} = 1/(ρσ²)."""
        return 1.0 / (self.rho * self.var_sd)

    @property
    def lam_sr(self) -> NDArray[np.float64]:
        return 1.0 / (self.rho * self.var_sr)

    @property
    def lam_rd(self) -> NDArray[np.float64]:
        return 1.0 / (self.rho * self.var_rd)

    @classmethod
    def identical(
        cls,
        n_sources: int,
        n_relays: int,
        k_sel: int,
        l_sel: int,
        rho: float,
        r0: float,
        variance: float = 1.0,
    ) -> "RelayNetwork":
        """Red con todos los enlaces de igual varianza."""
        return cls(
            var_sd=np.full(n_sources, variance),
            var_sr=np.full((n_sources, n_relays), variance),
            var_rd=np.full(n_relays, variance),
            rho=rho,
            r0=r0,
            k_sel=k_sel,
            l_sel=l_sel,
        )


class OutageBranch(str, Enum):
    """Rama de la forma cerrada según la relación entre K y L."""

    K_GT_L = "K_gt_L"
    K_LE_L = "K_le_L"


@dataclass(frozen=True)
class OutageResult:
    """Probabilidad de outage y su desglose por número de enlaces directos útiles η."""

    p_out: float
    branch: OutageBranch
    terms: tuple[tuple[int, float], ...] = field(default_factory=tuple)
    exact_selection: bool = False
    """True si se condiciona conjuntamente sobre el conjunto seleccionado"""

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_out <= 1.0:
            raise ValueError(f"Outage probability {self.p_out} outside [0, 1]")


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Estimación Monte-Carlo con error estándar binomial."""

    estimate: float
    stderr: float
    trials: int
    outages: int

    def agrees_with(self, reference: float, sigmas: float = 3.0) -> bool:
        """
        |p − p̂| ≤ sigmas·max(stderr, √(p(1−p)/n), 1/n).

        El suelo evita que un estimador degenerado (p̂ = 0) dé stderr 0.
        """
        p = min(max(reference, 0.0), 1.0)
        scale = max(self.stderr, float(np.sqrt(p * (1.0 - p) / self.trials)), 1.0 / self.trials)
        return abs(reference - self.estimate) <= sigmas * scale
