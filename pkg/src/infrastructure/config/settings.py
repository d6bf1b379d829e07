"""Configuración centralizada de la aplicación."""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración centralizada usando Pydantic Settings.

    Lee variables de entorno (prefijo EECMEC_) desde .env. Ninguno de
    estos valores interviene en los cálculos numéricos.
    """

    model_config = SettingsConfigDict(
        env_prefix="EECMEC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Paths
    output_dir: Path = Field(default=Path("./output"), description="Output directory")
    config_file: Path = Field(
        default=Path("./config/ee-cmec.yaml"),
        description="Experiment configuration",
    )

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")

    # Debugging
    debug: bool = Field(default=False, description="Show tracebacks on error")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {value}")
        return level


# Singleton instance
settings = Settings()
