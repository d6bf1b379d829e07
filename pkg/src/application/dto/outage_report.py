"""DTO: evaluación de outage (forma cerrada, variante exacta y oráculo)."""

from dataclasses import dataclass
from typing import Optional

from src.domain.model.relay_network import MonteCarloEstimate, OutageResult, RelayNetwork


@dataclass(frozen=True)
class OutageReport:
    """
    Resultado de `outage`: ambas formas cerradas y, si se pidió, la
    estimación Monte-Carlo con su veredicto.
    """

    network: RelayNetwork
    closed_form: OutageResult
    """Estructura por ramas (η y ℓ independientes)"""

    exact: OutageResult
    """Condicionada conjuntamente sobre el conjunto seleccionado"""

    exact_selection: bool = False
    """Qué variante se contrasta con Monte-Carlo"""

    monte_carlo: Optional[MonteCarloEstimate] = None
    sigmas: float = 3.0

    @property
    def reference(self) -> OutageResult:
        return self.exact if self.exact_selection else self.closed_form

    @property
    def variant_gap(self) -> float:
        return abs(self.closed_form.p_out - self.exact.p_out)

    @property
    def passed(self) -> Optional[bool]:
        """None si no hay oráculo."""
        if self.monte_carlo is None:
            return None
        return self.monte_carlo.agrees_with(self.reference.p_out, self.sigmas)
