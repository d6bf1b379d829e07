"""Servicio de dominio: flujo de carga continuado (predictor-corrector)."""

import logging
import math

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import NoConvergenceError
from src.domain.model.bus_system import BusSystem, CPFStep, CPFTrace, PFState
from src.domain.service.power_flow import (
    MAX_NEWTON_ITER,
    TOL_PF,
    StateLayout,
    jacobian,
    newton_solve,
    power_mismatch,
)

logger = logging.getLogger(__name__)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class ContinuationPowerFlow:
    """
    Traza la curva λ–V de un sistema por predictor tangente y corrector
    con parametrización local.

    La variable de continuación es la componente de mayor |tangente|;
    empieza siendo λ y pasa a una tensión cerca de la nariz.
    """

    def __init__(
        self,
        system: BusSystem,
        sigma0: float = 0.1,
        tol: float = TOL_PF,
        max_corrector_iter: int = MAX_NEWTON_ITER,
        max_halvings: int = 10,
        easy_iterations: int = 3,
        easy_streak: int = 3,
        stop_fraction: float = 0.5,
        max_points: int = 500,
    ):
        """
        Args:
            system: Sistema de buses
            sigma0: Paso inicial y máximo
            tol: Tolerancia ‖F‖∞ de cada punto aceptado
            max_corrector_iter: Máximo de iteraciones del corrector
            max_halvings: Reducciones de σ antes de abortar
            easy_iterations: Iteraciones a partir de las cuales una corrección no es "fácil"
            easy_streak: Correcciones fáciles seguidas para duplicar σ
            stop_fraction: Se para tras la nariz cuando λ < fracción·λ_max
            max_points: Presupuesto de puntos de la traza
        """
        if sigma0 <= 0.0:
            raise ValueError("sigma0 must be > 0")

        if not 0.0 <= stop_fraction < 1.0:
            raise ValueError("stop_fraction must lie in [0, 1)")

        self.system = system
        self.layout = StateLayout(system)
        self.sigma0 = sigma0
        self.tol = tol
        self.max_corrector_iter = max_corrector_iter
        self.max_halvings = max_halvings
        self.easy_iterations = easy_iterations
        self.easy_streak = easy_streak
        self.stop_fraction = stop_fraction
        self.max_points = max_points

    def _augmented(self, state: PFState, index: int) -> NDArray[np.float64]:
        f_x, f_lambda = jacobian(state, self.system)
        row = np.zeros(self.layout.size)
        row[index] = 1.0
        return np.vstack((np.column_stack((f_x, f_lambda)), row))

    def tangent(
        self,
        state: PFState,
        index: int,
        previous: NDArray[np.float64] | None = None,
    ) -> NDArray[np.float64]:
        """
        Resuelve [F_x F_λ; e_k] t = [0; ±1].

        El signo sigue la dirección de avance: +1 en el primer paso y,
        después, el que mantiene ⟨t, t_prev⟩ > 0.

        Raises:
            np.linalg.LinAlgError: Si la matriz aumentada es singular
        """
        matrix = self._augmented(state, index)
        rhs = np.zeros(self.layout.size)
        rhs[-1] = 1.0
        t = np.linalg.solve(matrix, rhs)
        if not np.all(np.isfinite(t)):
            raise np.linalg.LinAlgError("Non-finite tangent")

        if previous is not None and float(np.dot(t, previous)) < 0.0:
            t = -t
        return t

    def predictor(
        self,
        state: PFState,
        index: int,
        sigma: float,
        previous: NDArray[np.float64] | None = None,
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        Paso predictor z + σ·t.

        Returns:
            (z predicho, tangente)
        """
        t = self.tangent(state, index, previous)
        return self.layout.to_vector(state) + sigma * t, t

    def corrector(
        self,
        predicted: NDArray[np.float64],
        index: int,
        eta_target: float,
        template: PFState,
    ) -> tuple[PFState, int]:
        """
        Newton sobre [F(θ, V, λ); z_k − η] = 0.

        Args:
            predicted: Vector z predicho
            index: Variable de continuación k
            eta_target: Valor fijado para z_k
            template: Estado del que se toman slack y consignas PV

        Returns:
            (estado corregido, iteraciones)

        Raises:
            NoConvergenceError: Si no converge o sale de la región V > 0
        """
        z = np.array(predicted, dtype=np.float64)
        z[index] = eta_target

        for iteration in range(self.max_corrector_iter + 1):
            if np.any(self.layout.voltages(z, template) <= 0.0) or not np.all(np.isfinite(z)):
                raise NoConvergenceError("Corrector left the physical region")

            state = self.layout.to_state(z, template)
            residual = power_mismatch(state, self.system)
            if residual.size == 0 or float(np.max(np.abs(residual))) <= self.tol:
                return state, iteration

            if iteration == self.max_corrector_iter:
                break

            matrix = self._augmented(state, index)
            rhs = -np.concatenate((residual, [z[index] - eta_target]))
            try:
                z += np.linalg.solve(matrix, rhs)
            except np.linalg.LinAlgError as e:
                raise NoConvergenceError("Singular augmented Jacobian in corrector") from e

        raise NoConvergenceError(
            f"Corrector did not converge in {self.max_corrector_iter} iterations"
        )

    def _refine_nose(self, left: PFState, peak: PFState, right: PFState) -> PFState:
        """
        Maximiza λ con búsqueda de sección áurea sobre la tensión más variable.

        El intervalo es el que delimitan los puntos a ambos lados del pico.
        """
        z_left = self.layout.to_vector(left)
        z_right = self.layout.to_vector(right)
        z_peak = self.layout.to_vector(peak)
        span = np.abs(z_right[: self.layout.lambda_index] - z_left[: self.layout.lambda_index])
        if span.size == 0 or float(np.max(span)) == 0.0:
            return peak
        index = int(np.argmax(span))

        a, b = float(z_left[index]), float(z_right[index])

        def evaluate(value: float) -> PFState | None:
            weight = (value - a) / (b - a)
            guess = (1.0 - weight) * z_left + weight * z_right
            guess[self.layout.lambda_index] = max(
                float(z_peak[self.layout.lambda_index]), float(guess[self.layout.lambda_index])
            )
            try:
                state, _ = self.corrector(guess, index, value, peak)
            except NoConvergenceError:
                return None
            return state

        best = peak
        lo, hi = min(a, b), max(a, b)
        c = hi - _GOLDEN * (hi - lo)
        d = lo + _GOLDEN * (hi - lo)
        fc, fd = evaluate(c), evaluate(d)
        for _ in range(80):
            if hi - lo <= 1e-12 * max(1.0, abs(hi)):
                break
            lam_c = fc.lam if fc is not None else -math.inf
            lam_d = fd.lam if fd is not None else -math.inf
            if lam_c >= lam_d:
                hi, d, fd = d, c, fc
                c = hi - _GOLDEN * (hi - lo)
                fc = evaluate(c)
            else:
                lo, c, fc = c, d, fd
                d = lo + _GOLDEN * (hi - lo)
                fd = evaluate(d)

        for candidate in (fc, fd):
            if candidate is not None and candidate.lam > best.lam:
                best = candidate
        return best

    def trace_curve(self) -> CPFTrace:
        """
        Bucle predictor-corrector desde el caso base hasta pasar la nariz.

        Termina cuando λ cae por debajo de stop_fraction·λ_max tras la
        nariz, se agota el presupuesto de puntos, el paso no puede
        reducirse más o la matriz aumentada es singular para todos los
        índices de continuación.

        Raises:
            NoConvergenceError: Si el caso base (λ = 0) no tiene solución
        """
        try:
            base = newton_solve(self.system, PFState.initial(self.system), 0.0)
        except NoConvergenceError as e:
            raise NoConvergenceError(f"Base case is unsolvable: {e}") from e

        if not self.system.has_direction:
            return CPFTrace(points=(base,), nose=base)

        points: list[PFState] = [base]
        step_log: list[CPFStep] = []
        index = self.layout.lambda_index
        sigma = self.sigma0
        previous: NDArray[np.float64] | None = None
        easy = 0
        nose: PFState | None = None
        tried: set[int] = set()

        while len(points) < self.max_points:
            current = points[-1]
            try:
                t = self.tangent(current, index, previous)
            except np.linalg.LinAlgError:
                logger.warning("Singular augmented matrix at lambda=%.6g", current.lam)
                tried.add(index)
                candidates = (
                    []
                    if previous is None
                    else [int(c) for c in np.argsort(-np.abs(previous), kind="stable")]
                )
                untried = [c for c in candidates if c not in tried]
                if not untried:
                    break
                index = untried[0]
                continue

            switched = int(np.argmax(np.abs(t)))
            if switched != index:
                t = t / abs(t[switched])
                index = switched
                logger.debug("Continuation index switched to %d at lambda=%.6g", index, current.lam)

            accepted: PFState | None = None
            iterations = 0
            for _ in range(self.max_halvings + 1):
                predicted = self.layout.to_vector(current) + sigma * t
                try:
                    accepted, iterations = self.corrector(
                        predicted, index, float(predicted[index]), current
                    )
                    break
                except NoConvergenceError:
                    sigma /= 2.0
                    easy = 0

            if accepted is None:
                logger.warning("Step could not be reduced further at lambda=%.6g", current.lam)
                break

            step_log.append(CPFStep(sigma=sigma, index=index, iterations=iterations))
            previous = t

            if iterations <= self.easy_iterations:
                easy += 1
                if easy >= self.easy_streak:
                    sigma = min(2.0 * sigma, self.sigma0)
                    easy = 0
            else:
                easy = 0

            if nose is None and accepted.lam < current.lam and len(points) >= 2:
                nose = self._refine_nose(points[-2], current, accepted)
                if nose is not current:
                    if self._after_peak(current, nose, accepted):
                        points.append(nose)
                    else:
                        points.insert(len(points) - 1, nose)

            points.append(accepted)
            tried.clear()

            if nose is not None and accepted.lam < self.stop_fraction * nose.lam:
                break

        if nose is None:
            nose = max(points, key=lambda p: p.lam)

        logger.info("CPF traced %d points, lambda_max=%.6g", len(points), nose.lam)
        return CPFTrace(points=tuple(points), nose=nose, step_log=tuple(step_log))

    def _after_peak(self, peak: PFState, nose: PFState, following: PFState) -> bool:
        """True si la nariz refinada queda entre el pico y el punto siguiente."""
        z_peak = self.layout.to_vector(peak)[: self.layout.lambda_index]
        z_nose = self.layout.to_vector(nose)[: self.layout.lambda_index]
        z_next = self.layout.to_vector(following)[: self.layout.lambda_index]
        return float(np.dot(z_nose - z_peak, z_next - z_peak)) > 0.0
