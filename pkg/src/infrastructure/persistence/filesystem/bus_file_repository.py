"""Adaptador: sistemas de buses desde fichero tabular."""

import logging
import math
import re
from pathlib import Path
from typing import List

from src.domain.model.bus_system import Branch, BusSystem, BusType
from src.domain.repository.bus_system_repository import BusSystemRepository
from src.infrastructure.exceptions import BusFileError

logger = logging.getLogger(__name__)

BUS_FIELDS = 11
BRANCH_FIELDS = 6


class BusFileRepository(BusSystemRepository):
    """
    Adaptador para leer sistemas de buses en p.u.

    Formato, una fila por línea (`#` inicia comentario)::

        bus    id type V0 theta0_deg PG QG PD0 QD0 dP dQ
        branch from to r x shunt

    `type` es slack, pv o pq. La dirección de carga (dP, dQ) es la que
    escala λ.
    """

    def load(self, path: Path) -> BusSystem:
        if not path.exists():
            raise BusFileError(f"Bus file not found: {path}")

        try:
            content = path.read_text(encoding="utf-8")
        except OSError as e:
            raise BusFileError(f"Error reading file {path}: {str(e)}") from e

        buses: List[List[str]] = []
        branch_rows: List[tuple[int, List[str]]] = []

        for number, line in enumerate(content.splitlines(), start=1):
            tokens = re.split(r"\s+", line.split("#", 1)[0].strip())
            if tokens == [""]:
                continue

            kind = tokens[0].lower()
            if kind == "bus" and len(tokens) == BUS_FIELDS:
                buses.append(tokens[1:])
            elif kind == "branch" and len(tokens) == BRANCH_FIELDS:
                branch_rows.append((number, tokens[1:]))
            else:
                raise BusFileError(f"{path.name}:{number}: malformed row '{line.strip()}'")

        if not buses:
            raise BusFileError(f"{path.name}: no bus rows")

        try:
            system = self._build(buses, branch_rows)
        except (ValueError, KeyError) as e:
            raise BusFileError(f"{path.name}: {str(e)}") from e

        logger.debug("Loaded %s: %d buses, %d branches", path.name, system.n, len(branch_rows))
        return system

    def _build(
        self, buses: List[List[str]], branch_rows: List[tuple[int, List[str]]]
    ) -> BusSystem:
        ids = [int(row[0]) for row in buses]
        if len(set(ids)) != len(ids):
            raise ValueError("Duplicate bus id")
        index = {bus_id: i for i, bus_id in enumerate(ids)}

        values = [[float(v) for v in row[2:]] for row in buses]
        branches = []
        for number, row in branch_rows:
            if int(row[0]) not in index or int(row[1]) not in index:
                raise ValueError(f"line {number}: branch references an unknown bus")
            branches.append(
                Branch(
                    from_bus=index[int(row[0])],
                    to_bus=index[int(row[1])],
                    r=float(row[2]),
                    x=float(row[3]),
                    shunt=float(row[4]),
                )
            )

        return BusSystem(
            bus_type=tuple(BusType(row[1].lower()) for row in buses),
            ybus=BusSystem.build_ybus(len(buses), branches),
            p_gen=[v[2] for v in values],
            q_gen=[v[3] for v in values],
            p_load=[v[4] for v in values],
            q_load=[v[5] for v in values],
            dp=[v[6] for v in values],
            dq=[v[7] for v in values],
            v0=[v[0] for v in values],
            theta0=[math.radians(v[1]) for v in values],
            bus_ids=tuple(ids),
        )
