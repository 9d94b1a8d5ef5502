"""
aliasfree - Main Entry Point
============================

Punto de entrada de la CLI (`aliasfree` en pyproject).

Este archivo:
1. Configura el logging según Settings
2. Parsea el comando y resuelve su configuración
3. Crea el directorio de la corrida y escribe resolved.cfg
4. Ejecuta el manejador del comando
5. Traduce las excepciones del dominio a códigos de salida estables
"""

import logging
import sys

from src.domain.exceptions import DomainException
from src.infrastructure.config import get_settings
from src.infrastructure.logging import configure_logging
from src.presentation.cli import HANDLERS, build_parser, load_config, make_run_dir

logger = logging.getLogger("aliasfree")

# ================================
# Exit Codes
# ================================
# 0 éxito, 1 uso o configuración, 2 error en tiempo de ejecución.

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

EXIT_CODES = {
    "CONFIGURATION_ERROR": EXIT_USAGE,
    "INVALID_SPEC": EXIT_USAGE,
}


def exit_code_for(exc: DomainException) -> int:
    return EXIT_CODES.get(exc.code, EXIT_RUNTIME)


def format_error(exc: DomainException) -> str:
    """Una línea para stderr: código, mensaje y detalles clave=valor."""
    details = " ".join(f"{k}={v}" for k, v in exc.details.items())
    line = f"error [{exc.code}]: {exc.message}"
    return f"{line} ({details})" if details else line


def main(argv: list[str] | None = None) -> int:
    settings = get_settings()
    configure_logging(settings)
    try:
        args = build_parser().parse_args(argv)
        resolved = load_config(args.command, args.config, args.overrides, args.seed)
        run_dir = make_run_dir(args.out or settings.out, resolved)
        logger.info(
            "run started",
            extra={"command": args.command, "run_dir": str(run_dir), "config": resolved.to_sections()},
        )
        lines = HANDLERS[args.command](resolved, run_dir)
    except DomainException as exc:
        logger.debug(exc.message, extra={"code": exc.code, "details": exc.details})
        print(format_error(exc), file=sys.stderr)
        return exit_code_for(exc)

    print(f"run_dir = {run_dir}")
    for line in lines:
        print(line)
    logger.info("run finished", extra={"command": args.command, "run_dir": str(run_dir)})
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
