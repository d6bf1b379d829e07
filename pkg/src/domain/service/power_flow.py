"""Servicio de dominio: residuo de potencia, Jacobiano analítico y Newton-Raphson."""

import logging

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import NoConvergenceError
from src.domain.model.bus_system import BusSystem, PFState

logger = logging.getLogger(__name__)

TOL_PF = 1e-8
MAX_NEWTON_ITER = 20


class StateLayout:
    """
    Correspondencia entre PFState y el vector z = [θ_pvpq, V_pq, λ].

    El último índice de z es siempre λ.
    """

    def __init__(self, system: BusSystem):
        self.system = system
        self.pvpq = system.pvpq
        self.pq = system.pq
        self.n_theta = self.pvpq.shape[0]
        self.n_v = self.pq.shape[0]
        self.lambda_index = self.n_theta + self.n_v

    @property
    def size(self) -> int:
        return self.lambda_index + 1

    def to_vector(self, state: PFState) -> NDArray[np.float64]:
        return np.concatenate((state.theta[self.pvpq], state.v[self.pq], [state.lam]))

    def voltages(self, z: NDArray[np.float64], template: PFState) -> NDArray[np.float64]:
        v = np.array(template.v, dtype=np.float64)
        v[self.pq] = z[self.n_theta : self.lambda_index]
        return v

    def to_state(self, z: NDArray[np.float64], template: PFState) -> PFState:
        """Reconstruye el estado; slack y PV conservan θ/V del template."""
        theta = np.array(template.theta, dtype=np.float64)
        theta[self.pvpq] = z[: self.n_theta]
        return PFState(theta=theta, v=self.voltages(z, template), lam=float(z[self.lambda_index]))


def _injections(state: PFState, system: BusSystem) -> NDArray[np.complex128]:
    voltage = state.complex_voltage
    return voltage * np.conj(system.ybus @ voltage)


def power_mismatch(state: PFState, system: BusSystem) -> NDArray[np.float64]:
    """
    Residuo F(θ, V, λ) = programado − calculado.

    ΔP en buses no slack y ΔQ en buses PQ, con la inyección estándar
    Q_i = Σ_k V_i V_k (G_ik sin θ_ik − B_ik cos θ_ik).
    """
    if state.v.shape != (system.n,):
        raise ValueError(f"State has {state.v.shape[0]} buses, system has {system.n}")

    injected = _injections(state, system)
    p_sched = system.p_gen - (system.p_load + state.lam * system.dp)
    q_sched = system.q_gen - (system.q_load + state.lam * system.dq)
    dp = p_sched - injected.real
    dq = q_sched - injected.imag
    return np.concatenate((dp[system.pvpq], dq[system.pq]))


def jacobian(
    state: PFState, system: BusSystem
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Derivadas analíticas del residuo.

    Returns:
        (F_x, F_λ): F_x respecto a [θ_pvpq, V_pq] y la columna F_λ
    """
    voltage = state.complex_voltage
    current = system.ybus @ voltage
    v_norm = voltage / np.abs(voltage)
    diag_v = np.diag(voltage)

    ds_dtheta = 1j * diag_v @ np.conj(np.diag(current) - system.ybus @ diag_v)
    ds_dv = diag_v @ np.conj(system.ybus @ np.diag(v_norm)) + np.conj(np.diag(current)) @ np.diag(
        v_norm
    )

    pvpq, pq = system.pvpq, system.pq
    j11 = ds_dtheta[np.ix_(pvpq, pvpq)].real
    j12 = ds_dv[np.ix_(pvpq, pq)].real
    j21 = ds_dtheta[np.ix_(pq, pvpq)].imag
    j22 = ds_dv[np.ix_(pq, pq)].imag

    f_x = -np.block([[j11, j12], [j21, j22]])
    f_lambda = -np.concatenate((system.dp[pvpq], system.dq[pq]))
    return f_x, f_lambda


def newton_solve(
    system: BusSystem,
    initial: PFState,
    lambda_fixed: float,
    tol: float = TOL_PF,
    max_iter: int = MAX_NEWTON_ITER,
) -> PFState:
    """
    Newton-Raphson con λ fijo.

    Args:
        system: Sistema de buses
        initial: Estado inicial (arranque plano para el caso base)
        lambda_fixed: Factor de carga
        tol: Tolerancia ‖F‖∞
        max_iter: Máximo de iteraciones

    Returns:
        Estado convergido

    Raises:
        NoConvergenceError: Divergencia, Jacobiano singular o V ≤ 0
    """
    layout = StateLayout(system)
    template = PFState(theta=initial.theta, v=initial.v, lam=lambda_fixed)
    z = layout.to_vector(template)
    state = template

    for iteration in range(max_iter + 1):
        residual = power_mismatch(state, system)
        if not np.all(np.isfinite(residual)):
            raise NoConvergenceError(f"Non-finite mismatch at lambda={lambda_fixed}")

        if residual.size == 0 or float(np.max(np.abs(residual))) <= tol:
            logger.debug(
                "Newton converged in %d iterations at lambda=%.6g", iteration, lambda_fixed
            )
            return state

        if iteration == max_iter:
            break

        f_x, _ = jacobian(state, system)
        try:
            dx = np.linalg.solve(f_x, -residual)
        except np.linalg.LinAlgError as e:
            raise NoConvergenceError(f"Singular Jacobian at lambda={lambda_fixed}") from e

        z[: layout.lambda_index] += dx
        if np.any(layout.voltages(z, template) <= 0.0) or not np.all(np.isfinite(z)):
            raise NoConvergenceError(f"Newton left the physical region at lambda={lambda_fixed}")

        state = layout.to_state(z, template)

    raise NoConvergenceError(
        f"Newton did not converge in {max_iter} iterations at lambda={lambda_fixed}"
    )
