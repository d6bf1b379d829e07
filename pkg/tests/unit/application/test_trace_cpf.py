"""Pruebas del caso de uso TraceCPF."""

import pytest

from src.application.use_cases.trace_cpf.trace_cpf_command import TraceCPFCommand
from src.application.use_cases.trace_cpf.trace_cpf_handler import TraceCPFHandler
from src.domain.model.experiment_config import CPFSection
from src.infrastructure.persistence.filesystem.bus_file_repository import BusFileRepository
from tests.fixtures.fakes import InMemoryResultsWriter


class TestTraceCPFCommand:
    def test_missing_bus_file(self, tmp_path):
        with pytest.raises(ValueError, match="does not exist"):
            TraceCPFCommand(bus_file=tmp_path / "nope.txt")

    def test_default_output_name(self, twobus_file):
        assert TraceCPFCommand(bus_file=twobus_file).resolved_output_name() == "twobus_trace.csv"


class TestTraceCPFHandler:
    def test_two_bus_report(self, twobus_file):
        writer = InMemoryResultsWriter()
        report = TraceCPFHandler(BusFileRepository(), writer).execute(
            TraceCPFCommand(bus_file=twobus_file)
        )
        assert report.lambda_max == pytest.approx(4.0, rel=1e-2)
        assert report.nose_voltage == pytest.approx(2**-0.5, abs=1e-3)
        assert writer.traces["twobus_trace.csv"] is report.trace

    def test_step_parameters_are_forwarded(self, twobus_file):
        writer = InMemoryResultsWriter()
        report = TraceCPFHandler(BusFileRepository(), writer).execute(
            TraceCPFCommand(
                bus_file=twobus_file,
                cpf=CPFSection(max_points=4),
                output_name="short.csv",
            )
        )
        assert len(report.trace.points) <= 5
        assert set(writer.traces) == {"short.csv"}
