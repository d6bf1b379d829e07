"""Rama principal W₀ de la función de Lambert para argumentos no negativos."""

import math

from src.domain.exceptions import DomainError

_MAX_ITER = 50
_TOL = 1e-15


def _initial_guess(z: float) -> float:
    if z <= math.e:
        return math.log1p(z)
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def lambert_w0(z: float) -> float:
    """
    Resuelve w·e^w = z con iteración de Halley.

    Args:
        z: Argumento real ≥ 0

    Returns:
        w ≥ 0

    Raises:
        DomainError: Si z < 0 o no es finito
    """
    if not math.isfinite(z):
        raise DomainError(f"lambert_w0 requires a finite argument, got {z}")

    if z < 0.0:
        raise DomainError(f"lambert_w0 is only defined here for z >= 0, got {z}")

    if z == 0.0:
        return 0.0

    w = _initial_guess(z)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        delta = f / denom
        w -= delta
        if abs(delta) <= _TOL * (1.0 + abs(w)):
            break

    return max(w, 0.0)
