"""Handler: Sweep (producto cruzado métodos × semillas × puntos)."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import groupby
from typing import Any, Dict, List, Sequence

from src.application.dto.sweep_result import SweepResult
from src.application.use_cases.run_method.run_method_command import RunMethodCommand
from src.application.use_cases.run_method.run_method_handler import RunMethodHandler
from src.application.use_cases.sweep.sweep_command import SweepCommand
from src.domain.exceptions import EECMECException
from src.domain.model.run_record import RunRecord
from src.domain.repository.results_writer import ResultsWriter

logger = logging.getLogger(__name__)

SUMMARY_METRICS = (
    "total_throughput",
    "edge_throughput",
    "objective_p1",
    "grid_power",
    "energy_saving",
)


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return mean, 0.0
    return mean, math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))


def summarize(records: Sequence[RunRecord]) -> List[Dict[str, Any]]:
    """
    Media y desviación típica muestral por (método, punto).

    Args:
        records: Filas ya ordenadas por (método, semilla, punto)

    Returns:
        Una fila por (método, punto), en orden (método, punto)
    """
    ordered = sorted(records, key=lambda r: (r.sort_key()[0], r.sweep_point, r.seed))
    rows: List[Dict[str, Any]] = []
    for (method, point), group in groupby(ordered, key=lambda r: (r.method, r.sweep_point)):
        members = list(group)
        row: Dict[str, Any] = {"method": method, "sweep_point": point, "n_seeds": len(members)}
        for metric in SUMMARY_METRICS:
            mean, std = _mean_std([float(getattr(r, metric)) for r in members])
            row[f"{metric}_mean"] = mean
            row[f"{metric}_std"] = std
        rows.append(row)
    return rows


class SweepHandler:
    """
    Orquesta el barrido completo.

    Los puntos son independientes y pueden ejecutarse en paralelo; las
    filas se reordenan antes de que un único escritor las emita.
    """

    def __init__(self, run_handler: RunMethodHandler, results_writer: ResultsWriter):
        """
        Args:
            run_handler: Handler de ejecución de métodos
            results_writer: Adaptador de escritura de resultados
        """
        self.run_handler = run_handler
        self.results_writer = results_writer

    def execute(self, command: SweepCommand) -> SweepResult:
        """
        Ejecuta el barrido y escribe filas y resumen.

        Args:
            command: Comando con la configuración

        Returns:
            SweepResult con filas, resumen y ficheros
        """
        start = time.monotonic()
        config = command.config
        experiment = config.experiment
        result = SweepResult(success=True)

        tasks = [
            RunMethodCommand(config=config, seed=seed, point=point)
            for point in experiment.sweep_values
            for seed in experiment.seeds
        ]
        workers = command.workers or experiment.workers

        def run(task: RunMethodCommand) -> List[RunRecord] | str:
            try:
                return self.run_handler.execute(task)
            except EECMECException as e:
                return f"seed={task.seed} point={task.point}: {e}"

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(run, tasks))
        else:
            outcomes = [run(task) for task in tasks]

        records: List[RunRecord] = []
        for outcome in outcomes:
            if isinstance(outcome, str):
                result.add_error(outcome)
            else:
                records.extend(outcome)

        records.sort(key=RunRecord.sort_key)
        result.records = records
        result.summary = summarize(records)

        for record in records:
            if record.max_violation > 0.0:
                result.add_warning(
                    f"{record.method} seed={record.seed} point={record.sweep_point}: "
                    f"max violation {record.max_violation:.3g}"
                )

        if result.success:
            prefix = command.prefix or experiment.output_prefix
            writer = self.results_writer
            result.add_file("runs", writer.write_runs(records, f"{prefix}_runs.csv"))
            summary_file = writer.write_summary(result.summary, f"{prefix}_summary.csv")
            result.add_file("summary", summary_file)

        result.set_metadata("rows", len(records))
        result.set_metadata("summary_rows", len(result.summary))
        result.set_metadata("duration_seconds", round(time.monotonic() - start, 2))
        logger.info("Sweep finished: %d rows, %d errors", len(records), len(result.errors))
        return result
