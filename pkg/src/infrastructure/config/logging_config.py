"""Configuración de logging (RichHandler sobre stderr)."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from src.infrastructure.config.settings import settings


def configure_logging(level: str | None = None) -> None:
    """
    Configura el logger raíz una sola vez.

    Los logs van a stderr para que la salida tabular por stdout quede limpia.

    Args:
        level: Nivel a usar (default: settings.log_level)
    """
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
        force=True,
    )
