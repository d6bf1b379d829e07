"""Comando: Sweep."""

from dataclasses import dataclass
from typing import Optional

from src.domain.model.experiment_config import ExperimentConfig


@dataclass(frozen=True)
class SweepCommand:
    """Comando para ejecutar métodos × semillas × puntos del eje de barrido."""

    config: ExperimentConfig

    prefix: Optional[str] = None
    """Prefijo de los CSV (default: el de la configuración)"""

    workers: Optional[int] = None
    """Hilos (default: los de la configuración)"""

    def __post_init__(self) -> None:
        """Valida el comando."""
        if self.workers is not None and self.workers < 1:
            raise ValueError("workers must be >= 1")

        if self.prefix is not None and not self.prefix.strip():
            raise ValueError("prefix cannot be empty")
