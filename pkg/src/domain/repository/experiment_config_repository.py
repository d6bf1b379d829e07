"""Puerto: lectura de configuración de experimentos (interface)."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.domain.model.experiment_config import ExperimentConfig


class ExperimentConfigRepository(ABC):
    """Puerto de salida: proveedor de ExperimentConfig validada."""

    @abstractmethod
    def load(self, path: Path) -> ExperimentConfig:
        """
        Carga y valida la configuración.

        Args:
            path: Path al fichero de configuración

        Returns:
            ExperimentConfig validada

        Raises:
            ConfigFileError: Si el fichero no existe, no parsea o no valida
        """
        pass
