"""
CLI Parser
==========

Parser argparse de `aliasfree`:

    aliasfree <comando> [--config PATH] [--seed N] [--out DIR] [--set KEY=VALUE ...]

Comandos: gen-corpus, train, probe, metrics, bench.

Los errores de uso no terminan el proceso: se convierten en
ConfigurationError para que main() aplique el mapa de códigos de salida.
"""

import argparse
from pathlib import Path
from typing import NoReturn

from src.domain.exceptions import ConfigurationError
from src.presentation.cli.run_config import COMMAND_SECTIONS

COMMAND_HELP = {
    "gen-corpus": "genera un corpus de escritorio (WAV + manifest.csv)",
    "train": "entrena un emulador o un procesador HA/SE en lazo cerrado",
    "probe": "corre sondas de artefactos sobre un sistema",
    "metrics": "NRMSE NH vs HI sin procesar y procesado",
    "bench": "mide el factor de tiempo real de un modelo",
}


class CliParser(argparse.ArgumentParser):
    """ArgumentParser que lanza ConfigurationError en lugar de salir."""

    def error(self, message: str) -> NoReturn:
        raise ConfigurationError(f"usage error: {message}", details={"usage": self.format_usage().strip()})


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="archivo key = value con secciones")
    common.add_argument("--seed", type=int, default=None, help="reemplaza run.seed")
    common.add_argument("--out", type=Path, default=None, help="raíz de salida (default: ALIASFREE_OUT)")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override 'seccion.clave=valor'; sin sección aplica a la principal del comando",
    )

    parser = CliParser(prog="aliasfree", description="Artifact-free dCoNNear toolkit")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for name in COMMAND_SECTIONS:
        commands.add_parser(name, parents=[common], help=COMMAND_HELP[name])
    return parser
