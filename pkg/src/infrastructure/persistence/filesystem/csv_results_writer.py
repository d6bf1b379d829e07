"""Adaptador: escritura de resultados en CSV."""

import csv
import io
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from src.domain.model.bus_system import CPFTrace
from src.domain.model.run_record import RunRecord
from src.domain.repository.results_writer import ResultsWriter
from src.infrastructure.config.settings import settings
from src.infrastructure.exceptions import OutputGenerationError

SCHEMA_VERSION = 1


def _cell(value: Any) -> str:
    """repr para floats: el CSV conserva todos los dígitos."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(schema: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Renderiza un CSV con línea de esquema versionada.

    Args:
        schema: Nombre del esquema (runs, summary, trace)
        header: Columnas
        rows: Filas en el orden de emisión

    Returns:
        Texto CSV con terminador '\\n'
    """
    buffer = io.StringIO()
    buffer.write(f"# ee-cmec {schema} schema v{SCHEMA_VERSION}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


class CSVResultsWriter(ResultsWriter):
    """
    Adaptador para escribir resultados como CSV.

    Mismas entradas producen los mismos bytes.
    """

    def __init__(self, output_dir: Path | None = None):
        """
        Args:
            output_dir: Directorio de salida (usa settings si no se proporciona)
        """
        self.output_dir = output_dir or settings.output_dir
        self._ensure_output_dir()

    def _ensure_output_dir(self) -> None:
        """Crea el directorio de salida si no existe."""
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            raise OutputGenerationError(f"Cannot create output directory: {str(e)}") from e

    def write_runs(self, records: Sequence[RunRecord], filename: str) -> Path:
        columns = RunRecord.columns()
        rows = ([getattr(r, c) for c in columns] for r in records)
        return self._save_file(render_csv("runs", columns, rows), filename)

    def write_summary(self, rows: Sequence[dict[str, float | str]], filename: str) -> Path:
        header = list(rows[0].keys()) if rows else ["method", "sweep_point", "n_seeds"]
        body = ([row[c] for c in header] for row in rows)
        return self._save_file(render_csv("summary", header, body), filename)

    def write_trace(self, trace: CPFTrace, filename: str) -> Path:
        """Una fila por punto: λ, marca de nariz, V y θ (grados) por bus."""
        n = trace.nose.v.shape[0]
        header = ["point", "lambda", "is_nose"]
        header += [f"v_{i + 1}" for i in range(n)]
        header += [f"theta_deg_{i + 1}" for i in range(n)]

        def rows() -> Iterable[list[Any]]:
            for k, point in enumerate(trace.points):
                yield (
                    [k, float(point.lam), int(point is trace.nose)]
                    + [float(v) for v in point.v]
                    + [float(t) for t in np.degrees(point.theta)]
                )

        return self._save_file(render_csv("trace", header, rows()), filename)

    def _save_file(self, content: str, filename: str) -> Path:
        """
        Guarda contenido a un archivo.

        Raises:
            OutputGenerationError: Si no se puede escribir el archivo
        """
        file_path = self.output_dir / filename

        try:
            file_path.write_text(content, encoding="utf-8", newline="")
            return file_path
        except Exception as e:
            raise OutputGenerationError(f"Cannot write file {filename}: {str(e)}") from e
