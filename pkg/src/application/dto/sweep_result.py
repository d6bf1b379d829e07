"""DTOs: Resultados de un barrido."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

from src.domain.model.run_record import RunRecord


@dataclass
class SweepResult:
    """
    DTO que encapsula el resultado de un barrido.

    Contiene las filas, el resumen, los ficheros escritos y los
    errores/avisos recogidos por el caso de uso.
    """

    success: bool
    """Si el barrido terminó sin errores"""

    records: List[RunRecord] = field(default_factory=list)
    """Filas en orden (método, semilla, punto)"""

    summary: List[Dict[str, Any]] = field(default_factory=list)
    """Medias y desviaciones por (método, punto)"""

    generated_files: Dict[str, Path] = field(default_factory=dict)
    """Archivos generados: {tipo: path}"""

    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    """Metadata adicional (tiempo, conteos, etc.)"""

    def add_file(self, file_type: str, file_path: Path) -> None:
        """Añade un archivo generado."""
        self.generated_files[file_type] = file_path

    def add_error(self, error: str) -> None:
        """Añade un error."""
        self.errors.append(error)
        self.success = False

    def add_warning(self, warning: str) -> None:
        """Añade un warning."""
        self.warnings.append(warning)

    def set_metadata(self, key: str, value: Any) -> None:
        """Establece metadata."""
        self.metadata[key] = value
