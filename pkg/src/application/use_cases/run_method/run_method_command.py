"""Comando: RunMethod."""

from dataclasses import dataclass
from typing import Optional, Tuple

from src.domain.model.experiment_config import ExperimentConfig
from src.domain.model.run_record import Method


@dataclass(frozen=True)
class RunMethodCommand:
    """
    Comando para ejecutar uno o varios métodos sobre un escenario.

    DTO inmutable que encapsula los parámetros del caso de uso.
    """

    config: ExperimentConfig
    """Configuración resuelta"""

    seed: int
    """Semilla del escenario (compartida por todos los métodos)"""

    point: Optional[float] = None
    """Punto del eje de barrido (None: escenario base)"""

    methods: Optional[Tuple[Method, ...]] = None
    """Métodos a ejecutar (None: los de la configuración)"""

    def __post_init__(self) -> None:
        """Valida el comando."""
        if self.methods is not None and not self.methods:
            raise ValueError("Methods list cannot be empty")

    def resolved_methods(self) -> Tuple[Method, ...]:
        return self.methods or self.config.experiment.methods
