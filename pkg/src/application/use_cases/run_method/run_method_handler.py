"""Handler: RunMethod (FPA, RPA y EE-CMEC sobre un mismo escenario)."""

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Dict, List

import numpy as np
from numpy.typing import NDArray

from src.application.use_cases.run_method.run_method_command import RunMethodCommand
from src.domain.exceptions import InfeasibleScenarioError
from src.domain.model.catalog import CachePolicy
from src.domain.model.energy_profile import EnergyProfile
from src.domain.model.experiment_config import ExperimentConfig
from src.domain.model.network import Scenario
from src.domain.model.run_record import Method, RunRecord
from src.domain.service.association import solve_p21
from src.domain.service.caching import build_policy, hit_probabilities
from src.domain.service.energy import (
    check_power_constraints,
    energy_saving_metric,
    min_grid_power,
    no_sharing_grid_power,
    objective_p1,
)
from src.domain.service.radio import sinr_matrix, user_rates, utility
from src.domain.service.scenario_generator import generate_scenario

logger = logging.getLogger(__name__)

EDGE_PERCENTILE = 5.0


@dataclass(frozen=True)
class _Allocation:
    """Potencias, asociación y diagnósticos producidos por un método."""

    powers: NDArray[np.float64]
    assignment: NDArray[np.int64]
    iterations: int
    association_violation: float


def _max_sinr_assignment(
    gamma: NDArray[np.float64], hit_probs: NDArray[np.float64]
) -> NDArray[np.int64]:
    """
    Cada usuario a la estación de mayor SINR entre las que tienen s_i > 0.

    Empates al menor índice.

    Raises:
        InfeasibleScenarioError: Si ninguna estación tiene probabilidad de acierto
    """
    usable = np.asarray(hit_probs) > 0.0
    if not np.any(usable):
        raise InfeasibleScenarioError("No station has a nonzero cache hit probability")
    masked = np.where(usable[:, None], gamma, -np.inf)
    return np.argmax(masked, axis=0).astype(np.int64)


def _c1_shortfall(
    gamma: NDArray[np.float64], assignment: NDArray[np.int64], gamma_min: float
) -> float:
    served = gamma[assignment, np.arange(assignment.shape[0])]
    return float(np.max(np.maximum(gamma_min - served, 0.0), initial=0.0))


class RunMethodHandler:
    """
    Ejecuta los métodos comparados y calcula sus métricas.

    Los tres métodos comparten el escenario generado con la misma
    semilla; la potencia de red de FPA (sin cooperación) es la
    referencia del ahorro energético.
    """

    def _energy(
        self,
        config: ExperimentConfig,
        powers: NDArray[np.float64],
        scenario: Scenario,
        sharing: bool,
    ) -> EnergyProfile:
        energy = config.energy
        if sharing and energy.power_sharing and energy.beta > 0.0:
            return min_grid_power(powers, scenario.harvests, energy.beta, energy.eta)
        return no_sharing_grid_power(powers, scenario.harvests, energy.beta, energy.eta)

    def _record(
        self,
        method: Method,
        scenario: Scenario,
        config: ExperimentConfig,
        placement: CachePolicy,
        allocation: _Allocation,
        profile: EnergyProfile,
        point: float | None,
    ) -> RunRecord:
        gamma = sinr_matrix(allocation.powers, scenario.channel)
        s = hit_probabilities(scenario.catalog, placement)
        rates = user_rates(allocation.assignment, gamma, s, scenario.bandwidth)

        n_stations, n_users = gamma.shape
        x = np.zeros((n_stations, n_users), dtype=np.int64)
        x[allocation.assignment, np.arange(n_users)] = 1
        utilities = np.zeros((n_stations, n_users))
        utilities[allocation.assignment, np.arange(n_users)] = [utility(r) for r in rates]

        violations = check_power_constraints(
            allocation.powers, profile, scenario.harvests, scenario.p_max
        )
        power_violation = max((v.margin for v in violations), default=0.0)

        return RunRecord(
            method=method.value,
            seed=scenario.seed,
            sweep_point=float(point) if point is not None else float(n_users),
            n_users=n_users,
            total_throughput=math.fsum(rates.tolist()),
            edge_throughput=float(np.percentile(rates, EDGE_PERCENTILE)),
            objective_p1=objective_p1(x, utilities, profile.grid, profile.eta),
            grid_power=profile.total_grid,
            energy_saving=0.0,
            iterations=allocation.iterations,
            max_violation=max(allocation.association_violation, power_violation),
            config_fingerprint=config.fingerprint(scenario.seed, point, method),
            scenario_fingerprint=scenario.fingerprint(),
        )

    def run_fpa(
        self, scenario: Scenario, config: ExperimentConfig, point: float | None = None
    ) -> RunRecord:
        """
        Asignación de potencia fija: P_i = P_i^max y asociación a máxima SINR.

        La potencia de red se contabiliza sin cooperación.
        """
        placement = build_policy(scenario.catalog, scenario.stations)
        powers = scenario.p_max
        gamma = sinr_matrix(powers, scenario.channel)
        assignment = _max_sinr_assignment(gamma, hit_probabilities(scenario.catalog, placement))
        gamma_min = config.solver_params().gamma_min
        shortfall = _c1_shortfall(gamma, assignment, gamma_min)
        allocation = _Allocation(powers, assignment, 0, shortfall)
        profile = self._energy(config, powers, scenario, sharing=False)
        return self._record(Method.FPA, scenario, config, placement, allocation, profile, point)

    def run_rpa(
        self,
        scenario: Scenario,
        config: ExperimentConfig,
        seed: int,
        point: float | None = None,
    ) -> RunRecord:
        """
        Asignación aleatoria: P_i ~ U[0, P_i^max], redibujada hasta cumplir C1.

        Si se agota el límite de redibujados se conserva el mejor sorteo y
        su violación queda registrada.
        """
        placement = build_policy(scenario.catalog, scenario.stations)
        gamma_min = config.solver_params().gamma_min
        hit_probs = hit_probabilities(scenario.catalog, placement)
        rng = np.random.default_rng([seed, 1])

        best: _Allocation | None = None
        for draw in range(1, config.rpa.max_redraws + 1):
            powers = rng.uniform(0.0, 1.0, size=scenario.num_stations) * scenario.p_max
            gamma = sinr_matrix(powers, scenario.channel)
            assignment = _max_sinr_assignment(gamma, hit_probs)
            shortfall = _c1_shortfall(gamma, assignment, gamma_min)
            if best is None or shortfall < best.association_violation:
                best = _Allocation(powers, assignment, draw, shortfall)
            if shortfall == 0.0:
                break
        assert best is not None

        if best.association_violation > 0.0:
            logger.warning(
                "RPA seed=%d: no feasible draw in %d attempts (shortfall %.3g)",
                seed,
                config.rpa.max_redraws,
                best.association_violation,
            )

        profile = self._energy(config, best.powers, scenario, sharing=True)
        return self._record(Method.RPA, scenario, config, placement, best, profile, point)

    def run_eecmec(
        self, scenario: Scenario, config: ExperimentConfig, point: float | None = None
    ) -> RunRecord:
        """
        Caché óptima, asociación por descomposición dual y mínima potencia de red.

        Las potencias de transmisión son los P_max (escalados si el barrido
        es sobre potencia).
        """
        placement = build_policy(scenario.catalog, scenario.stations)
        powers = scenario.p_max
        result = solve_p21(scenario, placement, config.solver_params(), powers=powers)
        allocation = _Allocation(
            powers, result.assignment, result.iterations, result.max_violation
        )
        profile = self._energy(config, powers, scenario, sharing=True)
        return self._record(Method.EECMEC, scenario, config, placement, allocation, profile, point)

    def execute(self, command: RunMethodCommand) -> List[RunRecord]:
        """
        Genera el escenario y ejecuta los métodos pedidos.

        Args:
            command: Comando con configuración, semilla y punto

        Returns:
            Un RunRecord por método, con el ahorro frente a FPA
        """
        config = command.config
        scenario = generate_scenario(config.scenario_config(command.point), command.seed)
        baseline = self.run_fpa(scenario, config, command.point)

        runners = {
            Method.FPA: lambda: baseline,
            Method.RPA: lambda: self.run_rpa(scenario, config, command.seed, command.point),
            Method.EECMEC: lambda: self.run_eecmec(scenario, config, command.point),
        }

        records: Dict[Method, RunRecord] = {}
        for method in command.resolved_methods():
            record = runners[method]()
            saving = energy_saving_metric(record, baseline)
            records[method] = dataclasses.replace(record, energy_saving=saving)

        logger.info(
            "seed=%d point=%s: %s",
            command.seed,
            command.point,
            ", ".join(f"{m.value} grid={r.grid_power:.3f}W" for m, r in records.items()),
        )
        return list(records.values())
