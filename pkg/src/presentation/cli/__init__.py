# ================================
# Command-Line Interface
# ================================
# Parser, resolución de configuración y un manejador por comando.
# ================================

from .handlers import HANDLERS, model_request
from .parser import CliParser, build_parser
from .run_config import (
    COMMAND_SECTIONS,
    MAIN_SECTION,
    RESOLVED_NAME,
    ResolvedConfig,
    apply_overrides,
    load_config,
    make_run_dir,
    resolve_config,
)

__all__ = [
    "CliParser",
    "build_parser",
    "HANDLERS",
    "model_request",
    "COMMAND_SECTIONS",
    "MAIN_SECTION",
    "RESOLVED_NAME",
    "ResolvedConfig",
    "apply_overrides",
    "resolve_config",
    "load_config",
    "make_run_dir",
]
