"""Servicio de dominio: asociación usuario-estación por descomposición dual."""

import itertools
import logging
import math

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import (
    DomainError,
    GuardError,
    InfeasibleScenarioError,
    NoFeasibleStationError,
)
from src.domain.model.association import (
    AssociationResult,
    BruteForceResult,
    DualState,
    IterationRecord,
    SolverParams,
)
from src.domain.model.catalog import CachePolicy
from src.domain.model.network import Scenario
from src.domain.service.caching import hit_probabilities
from src.domain.service.lambert import lambert_w0
from src.domain.service.radio import capacity, sinr_matrix

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 1_000_000
_TIE_TOLERANCE = 1e-12


def associate_user(
    j: int,
    c: NDArray[np.float64],
    gamma: NDArray[np.float64],
    state: DualState,
) -> int:
    """
    Estación que maximiza ln(c_ij) + μ_j γ_ij − ν_i.

    Las estaciones con c_ij ≤ 0 se excluyen. Los empates (dentro de
    redondeo) se resuelven por el menor índice.

    Args:
        j: Índice del usuario
        c: c_ij por estación
        gamma: γ_ij por estación
        state: Estado dual actual

    Raises:
        NoFeasibleStationError: Si ninguna estación tiene c_ij > 0
    """
    c = np.asarray(c, dtype=np.float64)
    admissible = c > 0.0
    if not np.any(admissible):
        raise NoFeasibleStationError(f"User {j} has no station with positive capacity")

    scores = np.full(c.shape, -np.inf)
    scores[admissible] = (
        np.log(c[admissible]) + state.mu[j] * np.asarray(gamma)[admissible] - state.nu[admissible]
    )
    best = float(np.max(scores))
    threshold = best - _TIE_TOLERANCE * max(1.0, abs(best))
    return int(np.flatnonzero(scores >= threshold)[0])


def optimal_k(s: float, nu: float) -> float:
    """
    Carga continua que anula 2k·ln(s) − ln(k) − 1 + ν.

    Para s = 1 el término cuadrático desaparece y k* = e^{ν−1}.

    Raises:
        DomainError: Si s ∉ (0, 1]
    """
    if s <= 0.0 or s > 1.0:
        raise DomainError(f"optimal_k requires 0 < s <= 1, got {s}")

    if s == 1.0:
        return math.exp(nu - 1.0)

    two_log_s = 2.0 * math.log(s)
    return -lambert_w0(-two_log_s * math.exp(nu - 1.0)) / two_log_s


def subgradient_step(
    state: DualState,
    x: NDArray[np.int64],
    k: NDArray[np.float64],
    gamma: NDArray[np.float64],
    gamma_min: float,
    loads: NDArray[np.int64],
) -> DualState:
    """
    Paso proyectado del subgradiente sobre (μ, ν) con el δ(t) del estado.

    μ_j ← [μ_j − δ(Σ_i x_ij γ_ij − γ_min)]⁺ ; ν_i ← [ν_i − δ(k_i − Σ_j x_ij)]⁺
    """
    served = np.sum(np.asarray(x) * np.asarray(gamma), axis=0)
    mu = np.maximum(state.mu - state.step * (served - gamma_min), 0.0)
    nu = np.maximum(state.nu - state.step * (np.asarray(k) - np.asarray(loads)), 0.0)
    return state.advanced(mu, nu)


def _k_term(k: float, log_s: float) -> float:
    """k² ln s − k ln k con 0·ln 0 = 0."""
    if k == 0.0:
        return 0.0
    return k * k * log_s - k * math.log(k)


def association_objective(
    assignment: NDArray[np.int64], log_c: NDArray[np.float64], log_s: NDArray[np.float64]
) -> float:
    """
    Valor del problema de asociación para una asignación entera.

    Σ_j ln c_{a(j) j} + Σ_i (k_i² ln s_i − k_i ln k_i), con k_i la carga entera.
    """
    users = np.arange(assignment.shape[0])
    loads = np.bincount(assignment, minlength=log_c.shape[0])
    terms = [float(log_c[assignment[j], j]) for j in users]
    terms.extend(_k_term(float(load), float(log_s[i])) for i, load in enumerate(loads) if load)
    return math.fsum(terms)


def _c1_shortfall(
    assignment: NDArray[np.int64], gamma: NDArray[np.float64], gamma_min: float
) -> float:
    served = gamma[assignment, np.arange(assignment.shape[0])]
    return float(np.max(np.maximum(gamma_min - served, 0.0), initial=0.0))


class _Problem:
    """Datos precalculados de una instancia: c, γ, ln s y máscara de admisibilidad."""

    def __init__(
        self,
        scenario: Scenario,
        placement: CachePolicy,
        powers: NDArray[np.float64] | None,
    ):
        p = scenario.p_max if powers is None else np.asarray(powers, dtype=np.float64)
        self.gamma = sinr_matrix(p, scenario.channel)
        self.s = hit_probabilities(scenario.catalog, placement)

        raw_c = capacity(self.gamma, scenario.bandwidth)
        admissible = (raw_c > 0.0) & (self.s > 0.0)[:, None]
        self.c = np.where(admissible, raw_c, 0.0)
        self.admissible = admissible

        with np.errstate(divide="ignore"):
            self.log_c = np.where(admissible, np.log(np.where(admissible, raw_c, 1.0)), -np.inf)
            self.log_s = np.log(self.s)

        if not np.all(admissible.any(axis=0)):
            stranded = np.flatnonzero(~admissible.any(axis=0)).tolist()
            raise InfeasibleScenarioError(f"Users {stranded} admit no serving station")

    def loads_k(self, nu: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.array(
            [optimal_k(float(s), float(v)) if s > 0.0 else 0.0 for s, v in zip(self.s, nu)],
            dtype=np.float64,
        )

    def dual_value(
        self,
        state: DualState,
        assignment: NDArray[np.int64],
        k: NDArray[np.float64],
        gamma_min: float,
    ) -> float:
        users = np.arange(assignment.shape[0])
        per_user = (
            self.log_c[assignment, users]
            + state.mu * self.gamma[assignment, users]
            - state.nu[assignment]
        )
        per_station = [
            _k_term(float(ki), float(ls)) + float(v) * float(ki) if s > 0.0 else 0.0
            for ki, ls, v, s in zip(k, self.log_s, state.nu, self.s)
        ]
        return math.fsum(
            [*per_user.tolist(), *per_station, -gamma_min * float(np.sum(state.mu))]
        )


def solve_p21(
    scenario: Scenario,
    placement: CachePolicy,
    params: SolverParams | None = None,
    powers: NDArray[np.float64] | None = None,
) -> AssociationResult:
    """
    Resuelve la asociación por descomposición dual y subgradiente.

    Cada iteración asocia cada usuario (regla de máximo score), calcula
    k* por estación con Lambert-W y actualiza los multiplicadores. Para
    al alcanzar max_iter o cuando el cambio máximo de multiplicadores es
    menor que la tolerancia. Retorna la mejor asignación entera vista
    (las que cumplen C1 tienen prioridad); toda asignación cumple C2/C6
    por construcción.

    Args:
        scenario: Escenario
        placement: Política de caché (óptima)
        params: Parámetros del solver
        powers: Potencias de transmisión fijas (P_max si no se indican)

    Raises:
        InfeasibleScenarioError: Si algún usuario no admite estación
    """
    params = params or SolverParams()
    problem = _Problem(scenario, placement, powers)
    n_stations, n_users = problem.gamma.shape

    state = DualState.initial(n_users, n_stations, params.step0)
    history: list[IterationRecord] = []
    best_dual = math.inf
    converged = False
    k = np.zeros(n_stations)
    best_assignment: NDArray[np.int64] | None = None
    best_key: tuple[bool, float] = (False, -math.inf)

    for iteration in range(1, params.max_iter + 1):
        assignment = np.array(
            [
                associate_user(j, problem.c[:, j], problem.gamma[:, j], state)
                for j in range(n_users)
            ],
            dtype=np.int64,
        )
        k = problem.loads_k(state.nu)
        loads = np.bincount(assignment, minlength=n_stations)

        dual = problem.dual_value(state, assignment, k, params.gamma_min)
        best_dual = min(best_dual, dual)
        shortfall = _c1_shortfall(assignment, problem.gamma, params.gamma_min)
        violation = max(shortfall, float(np.max(np.abs(k - loads))))
        history.append(IterationRecord(iteration, dual, violation))

        key = (shortfall == 0.0, association_objective(assignment, problem.log_c, problem.log_s))
        if best_assignment is None or key > best_key:
            best_assignment, best_key = assignment, key

        x = np.zeros((n_stations, n_users), dtype=np.int64)
        x[assignment, np.arange(n_users)] = 1
        next_state = subgradient_step(state, x, k, problem.gamma, params.gamma_min, loads)

        change = max(
            float(np.max(np.abs(next_state.mu - state.mu), initial=0.0)),
            float(np.max(np.abs(next_state.nu - state.nu), initial=0.0)),
        )
        state = next_state
        if change < params.tolerance:
            converged = True
            break

    assert best_assignment is not None
    primal = best_key[1]
    logger.debug(
        "Dual solver stopped after %d iterations (converged=%s, dual=%.6g, primal=%.6g)",
        len(history),
        converged,
        best_dual,
        primal,
    )

    return AssociationResult(
        assignment=best_assignment,
        k=k,
        dual_value=best_dual,
        primal_objective=primal,
        iterations=len(history),
        converged=converged,
        max_violation=history[-1].max_violation,
        history=tuple(history),
    )


def brute_force_association(
    scenario: Scenario,
    placement: CachePolicy,
    gamma_min: float = 0.1,
    powers: NDArray[np.float64] | None = None,
) -> BruteForceResult:
    """
    Óptimo exacto del problema de asociación por enumeración exhaustiva.

    Solo se consideran asignaciones que cumplen C1 (SINR servida ≥ γ_min).

    Raises:
        GuardError: Si |B|^|U| > 10⁶
        InfeasibleScenarioError: Si ninguna asignación cumple C1
    """
    n_stations, n_users = scenario.num_stations, scenario.num_users
    if n_stations**n_users > BRUTE_FORCE_LIMIT:
        raise GuardError(
            f"Brute force over {n_stations}^{n_users} assignments exceeds {BRUTE_FORCE_LIMIT}"
        )

    problem = _Problem(scenario, placement, powers)
    eligible = problem.admissible & (problem.gamma >= gamma_min)
    options = [np.flatnonzero(eligible[:, j]).tolist() for j in range(n_users)]

    best_value = -math.inf
    best: NDArray[np.int64] | None = None
    evaluated = 0
    for combo in itertools.product(*options):
        candidate = np.array(combo, dtype=np.int64)
        value = association_objective(candidate, problem.log_c, problem.log_s)
        evaluated += 1
        if value > best_value:
            best_value, best = value, candidate

    if best is None:
        raise InfeasibleScenarioError("No assignment satisfies the minimum SINR constraint")

    return BruteForceResult(assignment=best, value=best_value, evaluated=evaluated)
