"""
Tests Unitarios - Logging
=========================

Formato JSON y de texto, campos `extra` y reemplazo del handler.
"""

import json
import logging

import pytest

from src.infrastructure.config import Settings
from src.infrastructure.logging import JsonFormatter, TextFormatter, configure_logging

pytestmark = pytest.mark.unit


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord("aliasfree.test", logging.INFO, __file__, 1, "epoch done", None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_json_formatter_includes_extras():
    """Test de campos fijos y extras en el objeto JSON."""
    payload = json.loads(JsonFormatter().format(_record(epoch=3, val_loss=0.25)))

    assert payload["level"] == "INFO"
    assert payload["logger"] == "aliasfree.test"
    assert payload["message"] == "epoch done"
    assert payload["epoch"] == 3
    assert payload["val_loss"] == 0.25
    assert "ts" in payload


def test_text_formatter_appends_key_values():
    """Test de la línea legible."""
    line = TextFormatter().format(_record(epoch=3))

    assert " | INFO | aliasfree.test | epoch done epoch=3" in line


def test_configure_logging_replaces_its_handler():
    """Test que reconfigurar no duplica el handler."""
    root = logging.getLogger()

    configure_logging(Settings(log_format="json", log_level="DEBUG"))
    configure_logging(Settings(log_format="text", log_level="WARNING"))

    ours = [h for h in root.handlers if getattr(h, "_aliasfree", False)]
    assert len(ours) == 1
    assert isinstance(ours[0].formatter, TextFormatter)
    assert root.level == logging.WARNING
