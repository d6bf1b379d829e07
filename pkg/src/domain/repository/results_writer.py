"""Puerto: escritura de resultados tabulares (interface)."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Sequence

from src.domain.model.bus_system import CPFTrace
from src.domain.model.run_record import RunRecord


class ResultsWriter(ABC):
    """
    Puerto de salida: persistencia de filas de resultados.

    Las implementaciones deben producir salida byte a byte idéntica para
    entradas idénticas.
    """

    @abstractmethod
    def write_runs(self, records: Sequence[RunRecord], filename: str) -> Path:
        """
        Escribe una fila por RunRecord, en el orden recibido.

        Raises:
            OutputGenerationError: Si no se puede escribir
        """
        pass

    @abstractmethod
    def write_summary(self, rows: Sequence[dict[str, float | str]], filename: str) -> Path:
        """Escribe el resumen (medias y desviaciones por método y punto)."""
        pass

    @abstractmethod
    def write_trace(self, trace: CPFTrace, filename: str) -> Path:
        """Escribe la traza λ–V de un flujo continuado."""
        pass
