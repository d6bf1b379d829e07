"""Excepciones del dominio de simulación."""


class EECMECException(Exception):
    """Excepción base para todas las excepciones del proyecto."""

    pass


class InvalidConfigError(EECMECException, ValueError):
    """Configuración de escenario inválida (conteos nulos, rangos fuera de dominio)."""

    pass


class DomainError(EECMECException, ValueError):
    """Argumento fuera del dominio matemático de una operación."""

    pass


class NoFeasibleStationError(EECMECException):
    """Ninguna estación admite al usuario (todos los c_ij ≤ 0)."""

    pass


class InfeasibleScenarioError(EECMECException):
    """No existe asignación admisible para el escenario."""

    pass


class GuardError(EECMECException):
    """Instancia demasiado grande para una enumeración exhaustiva."""

    pass


class NoConvergenceError(EECMECException):
    """Newton o el corrector no convergieron."""

    pass


class InconsistencyError(EECMECException):
    """Resultado numérico fuera de su rango válido (error interno)."""

    pass


class ScenarioMismatchError(EECMECException):
    """Se comparan ejecuciones sobre escenarios distintos."""

    pass
