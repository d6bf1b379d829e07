"""Puerto: lectura de sistemas de buses (interface)."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.domain.model.bus_system import BusSystem


class BusSystemRepository(ABC):
    """
    Puerto de salida: fuente de sistemas de buses para el flujo continuado.

    Define el contrato que debe cumplir cualquier adaptador
    que quiera proveer sistemas al dominio.
    """

    @abstractmethod
    def load(self, path: Path) -> BusSystem:
        """
        Lee y parsea un sistema de buses.

        Args:
            path: Path al fichero tabular

        Returns:
            BusSystem en p.u.

        Raises:
            BusFileError: Si el fichero no existe o su contenido no es válido
        """
        pass
