"""DTO: resultado de una traza de flujo continuado."""

from dataclasses import dataclass
from pathlib import Path

from src.domain.model.bus_system import CPFTrace


@dataclass(frozen=True)
class CPFReport:
    """Traza calculada y fichero donde se ha escrito."""

    bus_file: Path
    trace: CPFTrace
    output_file: Path
    duration_seconds: float

    @property
    def lambda_max(self) -> float:
        return self.trace.lambda_max

    @property
    def nose_voltage(self) -> float:
        """Tensión mínima en la nariz (p.u.)."""
        return float(self.trace.nose.v.min())
