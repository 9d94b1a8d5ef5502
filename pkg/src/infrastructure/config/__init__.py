# ================================
# Infrastructure Config
# ================================
# Configuración de la aplicación usando Pydantic Settings.
# ================================

from .settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
