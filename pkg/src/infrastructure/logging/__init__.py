# ================================
# Infrastructure Logging
# ================================
# Formateadores JSON / texto y configuración del logger raíz.
# ================================

from .setup import JsonFormatter, TextFormatter, configure_logging, record_extras

__all__ = ["configure_logging", "JsonFormatter", "TextFormatter", "record_extras"]
