"""Servicio de dominio: popularidad Zipf y colocación óptima en caché."""

from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import InvalidConfigError
from src.domain.model.catalog import CachePolicy, Catalog, PolicyViolation
from src.domain.model.network import BaseStation

_TOLERANCE = 1e-12


def zipf_popularity(num_files: int, exponent: float) -> NDArray[np.float64]:
    """
    Popularidad p_f ∝ f^(−exponent), normalizada y en orden descendente.

    Raises:
        InvalidConfigError: Si F < 1 o el exponente es negativo
    """
    if num_files < 1:
        raise InvalidConfigError("Catalog needs at least one file")

    if exponent < 0.0:
        raise InvalidConfigError("Zipf exponent must be >= 0")

    weights = np.arange(1, num_files + 1, dtype=np.float64) ** (-exponent)
    return weights / weights.sum()


def make_catalog(num_files: int, exponent: float) -> Catalog:
    """Construye el Catalog con popularidad Zipf."""
    return Catalog(num_files=num_files, popularity=zipf_popularity(num_files, exponent))


def optimal_placement(popularity: NDArray[np.float64], cache_size: int) -> NDArray[np.float64]:
    """
    Columna óptima q*_i: los L_i ficheros más populares con probabilidad 1.

    El orden es estable por id de fichero, así que los empates favorecen
    al fichero de menor índice.

    Args:
        popularity: Vector p_f (no necesita estar ordenado)
        cache_size: Capacidad L_i

    Returns:
        Vector 0/1 de longitud F
    """
    p = np.asarray(popularity, dtype=np.float64)
    order = np.argsort(-p, kind="stable")
    column = np.zeros_like(p)
    column[order[: max(cache_size, 0)]] = 1.0
    return column


def hit_probability(popularity: NDArray[np.float64], column: NDArray[np.float64]) -> float:
    """s_i = Σ_f p_f q_fi, recortado a [0, 1] solo por redondeo."""
    s = float(np.dot(popularity, column))
    return min(max(s, 0.0), 1.0)


def build_policy(catalog: Catalog, stations: Sequence[BaseStation]) -> CachePolicy:
    """Política óptima para todas las estaciones (una columna por estación)."""
    columns = [optimal_placement(catalog.popularity, s.cache_size) for s in stations]
    return CachePolicy(q=np.column_stack(columns))


def hit_probabilities(catalog: Catalog, policy: CachePolicy) -> NDArray[np.float64]:
    """Vector s_i para todas las estaciones."""
    return np.array(
        [hit_probability(catalog.popularity, policy.column(i)) for i in range(policy.num_stations)],
        dtype=np.float64,
    )


def validate_policy(
    policy: CachePolicy, stations: Sequence[BaseStation]
) -> list[PolicyViolation]:
    """
    Comprueba C5 (0 ≤ q_fi ≤ 1) y C4 (Σ_f q_fi ≤ L_i).

    Returns:
        Lista vacía si la política es factible
    """
    violations: list[PolicyViolation] = []

    for i, station in enumerate(stations):
        column = policy.column(i)

        for f, value in enumerate(column):
            if value > 1.0 + _TOLERANCE:
                violations.append(PolicyViolation(i, "C5", float(value - 1.0), file=f))
            elif value < -_TOLERANCE:
                violations.append(PolicyViolation(i, "C5", float(-value), file=f))

        excess = float(np.sum(column)) - station.cache_size
        if excess > _TOLERANCE:
            violations.append(PolicyViolation(i, "C4", excess))

    return violations
