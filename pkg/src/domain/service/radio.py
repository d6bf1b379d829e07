"""Servicio de dominio: capa física (pérdidas, SINR, tasa y utilidad)."""

import math

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import DomainError
from src.domain.model.network import BaseStation, ChannelState, UserEquipment

DEFAULT_PL0_DB = 128.1
DEFAULT_PL_EXPONENT = 3.76
DEFAULT_REFERENCE_DISTANCE = 1000.0
DEFAULT_MIN_DISTANCE = 1.0
DEFAULT_FADING_FLOOR = 1e-9


def dbm_to_watts(dbm: float) -> float:
    """Convierte dBm a vatios."""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def noise_power(
    bandwidth: float, psd_dbm_hz: float = -174.0, noise_figure_db: float = 9.0
) -> float:
    """
    Potencia de ruido térmico σ² en vatios.

    Args:
        bandwidth: Ancho de banda B (Hz)
        psd_dbm_hz: Densidad espectral de ruido (dBm/Hz)
        noise_figure_db: Figura de ruido del receptor (dB)

    Returns:
        σ² (W)
    """
    return dbm_to_watts(psd_dbm_hz + 10.0 * math.log10(bandwidth) + noise_figure_db)


def path_gain(
    distance: float,
    pl0_db: float = DEFAULT_PL0_DB,
    exponent: float = DEFAULT_PL_EXPONENT,
    reference_distance: float = DEFAULT_REFERENCE_DISTANCE,
    min_distance: float = DEFAULT_MIN_DISTANCE,
) -> float:
    """Ganancia lineal de la ley log-distancia, con la distancia acotada por abajo."""
    d = max(distance, min_distance)
    loss_db = pl0_db + 10.0 * exponent * math.log10(d / reference_distance)
    return 10.0 ** (-loss_db / 10.0)


def channel_gain(
    station: BaseStation,
    user: UserEquipment,
    fading_draw: float,
    pl0_db: float = DEFAULT_PL0_DB,
    exponent: float = DEFAULT_PL_EXPONENT,
    reference_distance: float = DEFAULT_REFERENCE_DISTANCE,
    min_distance: float = DEFAULT_MIN_DISTANCE,
    fading_floor: float = DEFAULT_FADING_FLOOR,
) -> float:
    """
    Ganancia h_ij = PL(d) × fading.

    Args:
        station: Estación i
        user: Usuario j
        fading_draw: Variable exponencial de media unidad (potencia Rayleigh)

    Returns:
        Ganancia lineal estrictamente positiva
    """
    distance = math.dist(station.position, user.position)
    gain = path_gain(distance, pl0_db, exponent, reference_distance, min_distance)
    return gain * max(fading_draw, fading_floor)


def sinr_matrix(powers: NDArray[np.float64], channel: ChannelState) -> NDArray[np.float64]:
    """Tabla γ_ij para todas las parejas (estación, usuario)."""
    p = np.asarray(powers, dtype=np.float64)
    if np.any(p < 0.0):
        raise DomainError("Transmit powers must be >= 0")
    received = p[:, None] * channel.gain
    interference = received.sum(axis=0)[None, :] - received
    return received / (interference + channel.noise_power)


def sinr(i: int, j: int, powers: NDArray[np.float64], channel: ChannelState) -> float:
    """γ_ij = P_i h_ij / (Σ_{i'≠i} P_i' h_i'j + σ²)."""
    p = np.asarray(powers, dtype=np.float64)
    if np.any(p < 0.0):
        raise DomainError("Transmit powers must be >= 0")
    column = p * channel.gain[:, j]
    interference = math.fsum(column) - column[i]
    return float(column[i] / (max(interference, 0.0) + channel.noise_power))


def capacity(gamma: NDArray[np.float64] | float, bandwidth: float) -> NDArray[np.float64]:
    """c_ij = B·log2(1 + γ_ij)."""
    return bandwidth * np.log2(1.0 + np.asarray(gamma, dtype=np.float64))


def rate(gamma: float, k: int, hit_prob: float, bandwidth: float) -> float:
    """
    Tasa del usuario: R = s^k · (B/k) · log2(1 + γ) en bit/s.

    Args:
        gamma: SINR γ_ij ≥ 0
        k: Carga de la estación (usuarios asociados)
        hit_prob: Probabilidad de acierto s_i de la caché
        bandwidth: B (Hz)

    Raises:
        DomainError: Si k < 1 o los argumentos están fuera de rango
    """
    if k < 1:
        raise DomainError(f"Rate undefined for load k={k}")

    if not 0.0 <= hit_prob <= 1.0:
        raise DomainError(f"Hit probability {hit_prob} outside [0, 1]")

    if gamma < 0.0:
        raise DomainError("SINR must be >= 0")

    return float(hit_prob**k * (bandwidth / k) * math.log2(1.0 + gamma))


def utility(r: float) -> float:
    """Utilidad de equidad proporcional μ = ln R."""
    if r <= 0.0:
        raise DomainError(f"Utility undefined for rate {r}")
    return math.log(r)


def user_rates(
    assignment: NDArray[np.int64],
    gamma: NDArray[np.float64],
    hit_probs: NDArray[np.float64],
    bandwidth: float,
) -> NDArray[np.float64]:
    """
    Tasa de cada usuario dada la asignación (índice de estación por usuario).

    La carga k_i es la carga entera Σ_j x_ij.
    """
    loads = np.bincount(assignment, minlength=gamma.shape[0])
    return np.array(
        [
            rate(float(gamma[i, j]), int(loads[i]), float(hit_probs[i]), bandwidth)
            for j, i in enumerate(assignment)
        ],
        dtype=np.float64,
    )
