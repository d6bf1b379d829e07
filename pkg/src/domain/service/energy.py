"""Servicio de dominio: restricciones de potencia, mínima potencia de red y objetivo."""

import math

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import DomainError, ScenarioMismatchError
from src.domain.model.energy_profile import EnergyProfile, PowerViolation
from src.domain.model.run_record import RunRecord

EPS_STRICT = 1e-9
"""Margen con el que se implementa la desigualdad estricta P_i < presupuesto"""

_ROUNDING = 1e-12


def power_budget(profile: EnergyProfile, harvests: NDArray[np.float64]) -> NDArray[np.float64]:
    """G_i + E_i + β·entrada_i − salida_i."""
    return (
        profile.grid
        + np.asarray(harvests, dtype=np.float64)
        + profile.beta * profile.inflow
        - profile.outflow
    )


def check_power_constraints(
    powers: NDArray[np.float64],
    profile: EnergyProfile,
    harvests: NDArray[np.float64],
    caps: NDArray[np.float64],
) -> list[PowerViolation]:
    """
    Comprueba C3, C7 y C8 para cada estación.

    Returns:
        Lista vacía si todas las restricciones se cumplen
    """
    p = np.asarray(powers, dtype=np.float64)
    caps = np.asarray(caps, dtype=np.float64)
    budget = power_budget(profile, harvests)
    violations: list[PowerViolation] = []

    for i in range(p.shape[0]):
        if p[i] < 0.0:
            violations.append(PowerViolation(i, "C8", float(-p[i])))
        elif p[i] > caps[i] + _ROUNDING * max(1.0, caps[i]):
            violations.append(PowerViolation(i, "C8", float(p[i] - caps[i])))

        limit = budget[i] - EPS_STRICT + _ROUNDING * max(1.0, abs(budget[i]))
        if p[i] > limit:
            violations.append(PowerViolation(i, "C3", float(p[i] - budget[i] + EPS_STRICT)))

        if profile.grid[i] < 0.0:
            violations.append(PowerViolation(i, "C7", float(-profile.grid[i])))

        negative = profile.shared[i][profile.shared[i] < 0.0]
        if negative.size:
            violations.append(PowerViolation(i, "C7", float(-negative.min())))

    return violations


def min_grid_power(
    powers: NDArray[np.float64],
    harvests: NDArray[np.float64],
    beta: float,
    eta: float = 0.1,
) -> EnergyProfile:
    """
    Mínima potencia de red con cooperación energética.

    Las estaciones con excedente (E_i > P_i) envían a las deficitarias;
    cada vatio enviado entrega β. Emparejamiento voraz mayor déficit con
    mayor excedente; la red cubre el déficit residual más el margen de la
    desigualdad estricta en todas las estaciones. Con β = 0 no hay cooperación.

    Args:
        powers: Potencias de transmisión P_i
        harvests: Energía renovable E_i
        beta: Eficiencia de la transferencia β ∈ [0, 1]
        eta: Peso de la red en el objetivo (se guarda en el perfil)

    Returns:
        EnergyProfile con G y ε
    """
    p = np.asarray(powers, dtype=np.float64)
    e = np.asarray(harvests, dtype=np.float64)

    if p.shape != e.shape:
        raise DomainError("Powers and harvests must have the same length")

    if np.any(p < 0.0) or np.any(e < 0.0):
        raise DomainError("Powers and harvests must be >= 0")

    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")

    n = p.shape[0]
    shared = np.zeros((n, n))
    deficit = np.maximum(p - e, 0.0)
    surplus = np.maximum(e - p, 0.0)

    if beta > 0.0:
        receivers = [int(i) for i in np.argsort(-deficit, kind="stable") if deficit[i] > 0.0]
        senders = [int(i) for i in np.argsort(-surplus, kind="stable") if surplus[i] > 0.0]
        r = s = 0
        while r < len(receivers) and s < len(senders):
            dst, src = receivers[r], senders[s]
            amount = min(surplus[src], deficit[dst] / beta)
            shared[src, dst] += amount
            surplus[src] -= amount
            deficit[dst] -= beta * amount
            if deficit[dst] <= _ROUNDING * max(1.0, p[dst]):
                deficit[dst] = 0.0
                r += 1
            if surplus[src] <= _ROUNDING * max(1.0, e[src]):
                surplus[src] = 0.0
                s += 1

    available = e + beta * shared.sum(axis=0) - shared.sum(axis=1)
    grid = np.maximum(p - available, 0.0) + EPS_STRICT
    return EnergyProfile(grid=grid, shared=shared, beta=beta, eta=eta)


def no_sharing_grid_power(
    powers: NDArray[np.float64], harvests: NDArray[np.float64], beta: float = 0.8, eta: float = 0.1
) -> EnergyProfile:
    """Contabilidad sin cooperación: G_i = max(0, P_i − E_i) + margen."""
    p = np.asarray(powers, dtype=np.float64)
    e = np.asarray(harvests, dtype=np.float64)
    return EnergyProfile.no_sharing(np.maximum(p - e, 0.0) + EPS_STRICT, beta=beta, eta=eta)


def objective_p1(
    x: NDArray[np.int64],
    utilities: NDArray[np.float64],
    grid: NDArray[np.float64],
    eta: float,
) -> float:
    """Σ_ij x_ij μ_ij − η Σ_i G_i."""
    mask = np.asarray(x) != 0
    gained = math.fsum(np.asarray(utilities, dtype=np.float64)[mask].tolist())
    return gained - eta * math.fsum(np.asarray(grid, dtype=np.float64).tolist())


def energy_saving_metric(run: RunRecord, baseline: RunRecord) -> float:
    """
    Ahorro de potencia de red frente a la línea base (W).

    Positivo si el método toma menos potencia de la red que la base.

    Raises:
        ScenarioMismatchError: Si las ejecuciones no comparten escenario
    """
    if run.scenario_fingerprint != baseline.scenario_fingerprint:
        raise ScenarioMismatchError(
            f"Cannot compare {run.method} and {baseline.method}: different scenarios"
        )
    return baseline.grid_power - run.grid_power
