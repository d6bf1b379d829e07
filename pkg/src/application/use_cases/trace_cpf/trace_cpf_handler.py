"""Handler: TraceCPF (lectura del sistema, traza y escritura del CSV)."""

import logging
import time

from src.application.dto.cpf_report import CPFReport
from src.application.use_cases.trace_cpf.trace_cpf_command import TraceCPFCommand
from src.domain.repository.bus_system_repository import BusSystemRepository
from src.domain.repository.results_writer import ResultsWriter
from src.domain.service.continuation import ContinuationPowerFlow

logger = logging.getLogger(__name__)


class TraceCPFHandler:
    """
    Orquesta el flujo de carga continuado sobre un fichero de buses.

    Responsabilidades:
    1. Leer el sistema vía BusSystemRepository
    2. Trazar la curva con ContinuationPowerFlow
    3. Escribir la traza vía ResultsWriter
    """

    def __init__(self, bus_repository: BusSystemRepository, results_writer: ResultsWriter):
        self.bus_repository = bus_repository
        self.results_writer = results_writer

    def execute(self, command: TraceCPFCommand) -> CPFReport:
        """
        Ejecuta la traza.

        Args:
            command: Comando con el fichero y los parámetros de paso

        Returns:
            CPFReport con la traza y el CSV escrito

        Raises:
            BusFileError: Si el fichero no es válido
            NoConvergenceError: Si el caso base no tiene solución
            OutputGenerationError: Si no se puede escribir el CSV
        """
        start = time.monotonic()
        system = self.bus_repository.load(command.bus_file)
        logger.info("Tracing %s (%d buses)", command.bus_file.name, system.n)

        solver = ContinuationPowerFlow(
            system,
            sigma0=command.cpf.sigma0,
            stop_fraction=command.cpf.stop_fraction,
            max_points=command.cpf.max_points,
        )
        trace = solver.trace_curve()
        output = self.results_writer.write_trace(trace, command.resolved_output_name())

        logger.info(
            "λ_max=%.6f after %d points (%s)", trace.lambda_max, len(trace.points), output
        )
        return CPFReport(
            bus_file=command.bus_file,
            trace=trace,
            output_file=output,
            duration_seconds=round(time.monotonic() - start, 3),
        )
