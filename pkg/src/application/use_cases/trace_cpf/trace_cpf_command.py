"""Comando: TraceCPF."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from src.domain.model.experiment_config import CPFSection


@dataclass(frozen=True)
class TraceCPFCommand:
    """Comando para trazar la curva λ–V de un sistema de buses."""

    bus_file: Path
    """Fichero tabular del sistema"""

    cpf: CPFSection = field(default_factory=CPFSection)
    """Paso inicial, fracción de parada y presupuesto de puntos"""

    output_name: Optional[str] = None
    """Nombre del CSV (default: <bus_file>_trace.csv)"""

    def __post_init__(self) -> None:
        """Valida el comando."""
        if not self.bus_file.exists():
            raise ValueError(f"Bus file does not exist: {self.bus_file}")

        if self.output_name is not None and not self.output_name.strip():
            raise ValueError("output_name cannot be empty")

    def resolved_output_name(self) -> str:
        return self.output_name or f"{self.bus_file.stem}_trace.csv"
