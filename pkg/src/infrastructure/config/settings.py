"""
Application Settings
====================

Configuración de proceso usando Pydantic Settings.

Sólo contiene lo que no pertenece a un archivo de configuración de comando:
raíz de salida, tasa de muestreo por defecto y logging. Las variables de
entorno llevan el prefijo ALIASFREE_ (ALIASFREE_OUT, ALIASFREE_LOG_LEVEL...).

La configuración se carga una sola vez (singleton) usando lru_cache.
"""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración del proceso.

    Los valores se cargan de:
    1. Variables de entorno ALIASFREE_*
    2. Archivo .env
    3. Valores por defecto

    Ejemplo de uso:
        >>> settings = get_settings()
        >>> print(settings.out)
    """

    model_config = SettingsConfigDict(
        env_prefix="ALIASFREE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ================================
    # Application Settings
    # ================================
    app_name: str = Field(
        default="aliasfree-connear",
        description="Nombre de la aplicación",
    )
    app_version: str = Field(
        default="1.0.0",
        description="Versión de la aplicación",
    )

    # ================================
    # Run Settings
    # ================================
    out: Path = Field(
        default=Path("runs"),
        description="Raíz de los directorios de salida por ejecución",
    )
    sample_rate: float = Field(
        default=20000.0,
        gt=0,
        description="Tasa de muestreo por defecto (Hz)",
    )

    # ================================
    # Logging Settings
    # ================================
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Nivel de logging",
    )
    log_format: Literal["json", "text"] = Field(
        default="text",
        description="Formato de logs",
    )


@lru_cache
def get_settings() -> Settings:
    """
    Obtiene la instancia de configuración (singleton).

    Returns:
        Instancia de Settings
    """
    return Settings()
