"""Adaptador: configuración de experimentos desde YAML."""

import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from src.domain.model.experiment_config import ExperimentConfig
from src.domain.repository.experiment_config_repository import ExperimentConfigRepository
from src.infrastructure.exceptions import ConfigFileError

logger = logging.getLogger(__name__)


class YAMLConfigRepository(ExperimentConfigRepository):
    """
    Adaptador para leer ExperimentConfig desde un fichero YAML.

    Las secciones ausentes toman los valores por defecto; las claves
    desconocidas se rechazan.
    """

    def load(self, path: Path) -> ExperimentConfig:
        """Carga y valida la configuración."""
        if not path.exists():
            raise ConfigFileError(f"Config file not found: {path}")

        try:
            raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        except (OSError, yaml.YAMLError) as e:
            raise ConfigFileError(f"Cannot parse config file {path}: {str(e)}") from e

        if raw is None:
            raw = {}

        if not isinstance(raw, dict):
            raise ConfigFileError(f"Config file {path} must contain a mapping of sections")

        try:
            config = ExperimentConfig.model_validate(raw)
        except ValidationError as e:
            raise ConfigFileError(f"Invalid config file {path}:\n{e}") from e

        logger.debug("Loaded config %s (%d unused rows)", path, len(config.unused))
        return config
