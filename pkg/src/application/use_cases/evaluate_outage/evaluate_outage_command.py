"""Comando: EvaluateOutage."""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class EvaluateOutageCommand:
    """
    Comando para evaluar la probabilidad de outage de una red de relés.

    Todos los enlaces comparten la varianza `variance`; `direct_variances`
    permite fijar varianzas distintas en los enlaces directos.
    """

    n_sources: int
    n_relays: int
    k_sel: int
    l_sel: int
    rho: float
    """SNR de transmisión (lineal)"""

    r0: float
    """Tasa objetivo (bit/uso de canal)"""

    variance: float = 1.0
    direct_variances: Optional[tuple[float, ...]] = None

    trials: Optional[int] = None
    """Ensayos Monte-Carlo (None: sin oráculo)"""

    seed: int = 0
    workers: int = 1
    exact_selection: bool = False
    sigmas: float = 3.0
    """Tolerancia del contraste en errores estándar"""

    def __post_init__(self) -> None:
        """Valida el comando."""
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")

        if self.workers < 1:
            raise ValueError("workers must be >= 1")

        if self.direct_variances is not None and len(self.direct_variances) != self.n_sources:
            raise ValueError(f"Expected {self.n_sources} direct variances")
