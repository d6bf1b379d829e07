"""Pruebas del caso de uso EvaluateOutage."""

import pytest

from src.application.use_cases.evaluate_outage.evaluate_outage_command import (
    EvaluateOutageCommand,
)
from src.application.use_cases.evaluate_outage.evaluate_outage_handler import (
    EvaluateOutageHandler,
)
from src.domain.exceptions import GuardError


def _command(**overrides) -> EvaluateOutageCommand:
    params = dict(n_sources=4, n_relays=2, k_sel=2, l_sel=1, rho=10.0, r0=1.0)
    params.update(overrides)
    return EvaluateOutageCommand(**params)


class TestEvaluateOutageCommand:
    @pytest.mark.parametrize(
        "overrides", [{"trials": 0}, {"workers": 0}, {"direct_variances": (1.0, 2.0)}]
    )
    def test_validation(self, overrides):
        with pytest.raises(ValueError):
            _command(**overrides)


class TestEvaluateOutageHandler:
    def test_closed_form_only(self):
        report = EvaluateOutageHandler().execute(_command())
        assert report.monte_carlo is None
        assert report.passed is None
        assert 0.0 < report.closed_form.p_out < 1.0

    def test_identical_links_give_equal_variants(self):
        report = EvaluateOutageHandler().execute(_command())
        assert report.variant_gap == pytest.approx(0.0, abs=1e-12)

    def test_direct_variances(self):
        handler = EvaluateOutageHandler()
        command = _command(direct_variances=(1.0, 0.5, 2.0, 1.5))
        network = handler.build_network(command)
        assert network.var_sd.tolist() == [1.0, 0.5, 2.0, 1.5]
        assert network.var_rd.tolist() == [1.0, 1.0]

    def test_monte_carlo_verdict(self):
        report = EvaluateOutageHandler().execute(
            _command(trials=200_000, seed=7, exact_selection=True, sigmas=4.0)
        )
        assert report.reference is report.exact
        assert report.monte_carlo.trials == 200_000
        assert report.passed is True

    def test_guard_propagates(self):
        with pytest.raises(GuardError):
            EvaluateOutageHandler().execute(_command(n_sources=11, k_sel=2))
