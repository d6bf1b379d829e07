"""Contenedor de inyección de dependencias."""

from pathlib import Path

from src.application.use_cases.evaluate_outage.evaluate_outage_handler import (
    EvaluateOutageHandler,
)
from src.application.use_cases.run_method.run_method_handler import RunMethodHandler
from src.application.use_cases.sweep.sweep_handler import SweepHandler
from src.application.use_cases.trace_cpf.trace_cpf_handler import TraceCPFHandler
from src.domain.repository.bus_system_repository import BusSystemRepository
from src.domain.repository.experiment_config_repository import ExperimentConfigRepository
from src.domain.repository.results_writer import ResultsWriter
from src.infrastructure.config.settings import settings
from src.infrastructure.persistence.filesystem.bus_file_repository import BusFileRepository
from src.infrastructure.persistence.filesystem.csv_results_writer import CSVResultsWriter
from src.infrastructure.persistence.filesystem.yaml_config_repository import (
    YAMLConfigRepository,
)


class DIContainer:
    """
    Contenedor de inyección de dependencias.

    Centraliza la creación de todas las dependencias del sistema
    siguiendo el principio de Dependency Inversion (SOLID).
    """

    _config_repository: ExperimentConfigRepository | None = None
    _bus_repository: BusSystemRepository | None = None
    _results_writer: ResultsWriter | None = None
    _output_dir: Path | None = None

    @classmethod
    def set_output_dir(cls, output_dir: Path) -> None:
        """Redirige la salida (invalida el escritor ya creado)."""
        cls._output_dir = output_dir
        cls._results_writer = None

    @classmethod
    def get_config_repository(cls) -> ExperimentConfigRepository:
        """
        Retorna instancia de ExperimentConfigRepository.

        Singleton pattern para reutilizar la instancia.
        """
        if cls._config_repository is None:
            cls._config_repository = YAMLConfigRepository()

        return cls._config_repository

    @classmethod
    def get_bus_repository(cls) -> BusSystemRepository:
        if cls._bus_repository is None:
            cls._bus_repository = BusFileRepository()

        return cls._bus_repository

    @classmethod
    def get_results_writer(cls) -> ResultsWriter:
        """Retorna instancia de ResultsWriter."""
        if cls._results_writer is None:
            cls._results_writer = CSVResultsWriter(
                output_dir=cls._output_dir or settings.output_dir
            )

        return cls._results_writer

    @classmethod
    def get_run_method_handler(cls) -> RunMethodHandler:
        return RunMethodHandler()

    @classmethod
    def get_sweep_handler(cls) -> SweepHandler:
        return SweepHandler(
            run_handler=cls.get_run_method_handler(),
            results_writer=cls.get_results_writer(),
        )

    @classmethod
    def get_trace_cpf_handler(cls) -> TraceCPFHandler:
        return TraceCPFHandler(
            bus_repository=cls.get_bus_repository(),
            results_writer=cls.get_results_writer(),
        )

    @classmethod
    def get_evaluate_outage_handler(cls) -> EvaluateOutageHandler:
        return EvaluateOutageHandler()

    @classmethod
    def reset(cls) -> None:
        """
        Resetea todas las instancias singleton.

        Útil para testing.
        """
        cls._config_repository = None
        cls._bus_repository = None
        cls._results_writer = None
        cls._output_dir = None
