"""Sistemas de buses construidos en memoria."""

from src.domain.model.bus_system import Branch, BusSystem, BusType


def two_bus(load: float = 1.0) -> BusSystem:
    """Slack V=1 y bus PQ unido por una línea sin pérdidas x = 0.1."""
    return BusSystem(
        bus_type=(BusType.SLACK, BusType.PQ),
        ybus=BusSystem.build_ybus(2, [Branch(0, 1, r=0.0, x=0.1)]),
        p_gen=[0.0, 0.0],
        q_gen=[0.0, 0.0],
        p_load=[0.0, load],
        q_load=[0.0, 0.0],
        dp=[0.0, 1.0],
        dq=[0.0, 0.0],
        v0=[1.0, 1.0],
        theta0=[0.0, 0.0],
    )
