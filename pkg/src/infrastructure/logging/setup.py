"""
Logging Setup
=============

Configuración única del logging estándar según Settings.

- json: un objeto JSON por registro (ts, level, logger, message + extras)
- text: una línea legible "ts | LEVEL | logger | message key=value ..."

Los módulos obtienen su logger con logging.getLogger(__name__) y pasan los
campos estructurados en `extra`.
"""

import json
import logging
import sys
from datetime import datetime, timezone

UTC = timezone.utc
from typing import Any

from src.infrastructure.config import Settings

# Atributos propios de LogRecord; el resto proviene de `extra`.
_RESERVED = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}


def record_extras(record: logging.LogRecord) -> dict[str, Any]:
    """Campos pasados vía `extra` en la llamada de logging."""
    return {k: v for k, v in vars(record).items() if k not in _RESERVED}


def _timestamp(record: logging.LogRecord) -> str:
    return datetime.fromtimestamp(record.created, tz=UTC).isoformat(timespec="milliseconds")


class JsonFormatter(logging.Formatter):
    """Un objeto JSON por línea."""

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "ts": _timestamp(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        payload.update(record_extras(record))
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str, sort_keys=False)


class TextFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        extras = " ".join(f"{k}={v}" for k, v in record_extras(record).items())
        line = f"{_timestamp(record)} | {record.levelname} | {record.name} | {record.getMessage()}"
        if extras:
            line = f"{line} {extras}"
        if record.exc_info:
            line = f"{line}\n{self.formatException(record.exc_info)}"
        return line


def configure_logging(settings: Settings) -> None:
    """
    Instala un único handler en stderr sobre el logger raíz.

    Llamadas repetidas reemplazan el handler anterior en lugar de duplicarlo.
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JsonFormatter() if settings.log_format == "json" else TextFormatter())
    root = logging.getLogger()
    for existing in list(root.handlers):
        if getattr(existing, "_aliasfree", False):
            root.removeHandler(existing)
    handler._aliasfree = True  # type: ignore[attr-defined]
    root.addHandler(handler)
    root.setLevel(settings.log_level)
