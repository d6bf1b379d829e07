"""Handler: EvaluateOutage."""

import logging

import numpy as np

from src.application.dto.outage_report import OutageReport
from src.application.use_cases.evaluate_outage.evaluate_outage_command import (
    EvaluateOutageCommand,
)
from src.domain.model.relay_network import RelayNetwork
from src.domain.service.monte_carlo import monte_carlo_outage
from src.domain.service.outage import outage_probability

logger = logging.getLogger(__name__)


class EvaluateOutageHandler:
    """Calcula las dos formas cerradas y, opcionalmente, el oráculo Monte-Carlo."""

    def build_network(self, command: EvaluateOutageCommand) -> RelayNetwork:
        network = RelayNetwork.identical(
            command.n_sources,
            command.n_relays,
            command.k_sel,
            command.l_sel,
            rho=command.rho,
            r0=command.r0,
            variance=command.variance,
        )
        if command.direct_variances is None:
            return network
        return RelayNetwork(
            var_sd=np.asarray(command.direct_variances, dtype=np.float64),
            var_sr=network.var_sr,
            var_rd=network.var_rd,
            rho=network.rho,
            r0=network.r0,
            k_sel=network.k_sel,
            l_sel=network.l_sel,
        )

    def execute(self, command: EvaluateOutageCommand) -> OutageReport:
        """
        Evalúa la red descrita por el comando.

        Raises:
            GuardError: Si N o M > 10
            InconsistencyError: Si alguna probabilidad sale de [0, 1]
        """
        network = self.build_network(command)
        closed = outage_probability(network)
        exact = outage_probability(network, exact_selection=True)

        estimate = None
        if command.trials is not None:
            estimate = monte_carlo_outage(
                network, command.trials, command.seed, workers=command.workers
            )

        report = OutageReport(
            network=network,
            closed_form=closed,
            exact=exact,
            exact_selection=command.exact_selection,
            monte_carlo=estimate,
            sigmas=command.sigmas,
        )

        if estimate is not None and not estimate.agrees_with(closed.p_out, command.sigmas):
            logger.warning(
                "Branch closed form %.6g disagrees with Monte-Carlo %.6g (exact variant %.6g)",
                closed.p_out,
                estimate.estimate,
                exact.p_out,
            )

        logger.info(
            "P_out=%.6g (exact %.6g, branch %s)", closed.p_out, exact.p_out, closed.branch.value
        )
        return report
