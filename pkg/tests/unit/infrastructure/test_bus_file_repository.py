"""Pruebas del lector de ficheros de buses."""

import numpy as np
import pytest

from src.domain.model.bus_system import BusType
from src.infrastructure.exceptions import BusFileError
from src.infrastructure.persistence.filesystem.bus_file_repository import BusFileRepository

TWO_BUS_ROWS = (
    "bus 1 slack 1.0 0.0 0.0 0.0 0.0 0.0 0.0 0.0\n"
    "bus 2 pq    1.0 0.0 0.0 0.0 1.0 0.0 1.0 0.0\n"
)


def _write(tmp_path, content: str):
    path = tmp_path / "system.txt"
    path.write_text(content, encoding="utf-8")
    return path


class TestBusFileRepository:
    def test_two_bus(self, twobus_file):
        system = BusFileRepository().load(twobus_file)
        assert system.n == 2
        assert system.bus_type == (BusType.SLACK, BusType.PQ)
        assert system.ybus[0, 1] == pytest.approx(10j)
        assert system.ybus[1, 1] == pytest.approx(-10j)
        assert system.dp.tolist() == [0.0, 1.0]

    def test_five_bus(self, fivebus_file):
        system = BusFileRepository().load(fivebus_file)
        assert system.n == 5
        assert system.slack == 0
        assert np.allclose(system.ybus, system.ybus.T)

    def test_comments_and_blank_lines(self, tmp_path):
        content = "# header\n\n" + TWO_BUS_ROWS + "branch 1 2 0.0 0.1 0.0  # line\n"
        assert BusFileRepository().load(_write(tmp_path, content)).n == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(BusFileError, match="not found"):
            BusFileRepository().load(tmp_path / "nope.txt")

    def test_malformed_row(self, tmp_path):
        content = TWO_BUS_ROWS + "branch 1 2 0.0\n"
        with pytest.raises(BusFileError, match=":3: malformed row"):
            BusFileRepository().load(_write(tmp_path, content))

    def test_unknown_bus(self, tmp_path):
        content = TWO_BUS_ROWS + "branch 1 7 0.0 0.1 0.0\n"
        with pytest.raises(BusFileError, match="unknown bus"):
            BusFileRepository().load(_write(tmp_path, content))

    def test_duplicate_id(self, tmp_path):
        content = TWO_BUS_ROWS.replace("bus 2", "bus 1") + "branch 1 2 0.0 0.1 0.0\n"
        with pytest.raises(BusFileError, match="Duplicate"):
            BusFileRepository().load(_write(tmp_path, content))

    def test_unknown_bus_type(self, tmp_path):
        content = TWO_BUS_ROWS.replace("pq   ", "load ") + "branch 1 2 0.0 0.1 0.0\n"
        with pytest.raises(BusFileError):
            BusFileRepository().load(_write(tmp_path, content))

    def test_no_bus_rows(self, tmp_path):
        with pytest.raises(BusFileError, match="no bus rows"):
            BusFileRepository().load(_write(tmp_path, "# empty\n"))
