"""Excepciones de infraestructura (ficheros de configuración, buses y salida)."""

from src.domain.exceptions import EECMECException


class ConfigFileError(EECMECException):
    """Error leyendo o validando el fichero de configuración YAML."""

    pass


class BusFileError(EECMECException):
    """Error parseando un fichero de sistema de buses."""

    pass


class OutputGenerationError(EECMECException):
    """Error generando archivos de salida."""

    pass
