"""
Run Configuration
=================

Del archivo de configuración y los flags a una configuración resuelta:

1. Se leen las secciones del archivo (`--config`), si lo hay
2. Las claves sin sección pasan a la sección principal del comando
3. Se aplican `--set seccion.clave=valor` (o `clave=valor` sobre la principal)
4. `--seed` reemplaza `run.seed`
5. Cada sección se valida con su schema Pydantic; `[spec]` se valida
   al construir el modelo

La configuración resuelta se escribe como `resolved.cfg` dentro del
directorio de la corrida, cuyo nombre es `<comando>-<hash>-<timestamp>`.
"""

import hashlib
from dataclasses import dataclass, field
from datetime import datetime, timezone

UTC = timezone.utc
from pathlib import Path
from typing import cast

from pydantic import ValidationError

from src.domain.exceptions import ConfigurationError, PersistenceError
from src.infrastructure.persistence import Sections, parse_config_text, read_text, render_config
from src.presentation.schemas import SECTION_MODELS, ConfigSection, RunSection

RESOLVED_NAME = "resolved.cfg"

COMMAND_SECTIONS: dict[str, tuple[str, ...]] = {
    "gen-corpus": ("run", "corpus"),
    "train": ("run", "train", "model", "spec"),
    "probe": ("run", "probe", "model", "spec"),
    "metrics": ("run", "metrics"),
    "bench": ("run", "bench", "model", "spec"),
}

MAIN_SECTION = {
    "gen-corpus": "corpus",
    "train": "train",
    "probe": "probe",
    "metrics": "metrics",
    "bench": "bench",
}


@dataclass
class ResolvedConfig:
    """
    Configuración validada de una corrida.

    Atributos:
        command: Subcomando
        sections: Secciones validadas por nombre
        spec: Pares crudos de `[spec]` (sobrescriben el ModelSpec de escritorio)
    """

    command: str
    sections: dict[str, ConfigSection]
    spec: dict[str, str] = field(default_factory=dict)

    def section(self, name: str) -> ConfigSection:
        return self.sections[name]

    @property
    def seed(self) -> int:
        return cast(RunSection, self.sections["run"]).seed

    def to_sections(self) -> Sections:
        out: Sections = {name: model.to_pairs() for name, model in self.sections.items()}
        if self.spec:
            out["spec"] = dict(self.spec)
        return out

    def render(self) -> str:
        return render_config(self.to_sections())

    def digest(self) -> str:
        return hashlib.sha256(f"{self.command}\n{self.render()}".encode()).hexdigest()[:8]


def apply_overrides(sections: Sections, overrides: list[str], command: str) -> Sections:
    """
    Aplica `--set` en orden; la última asignación gana.

    Raises:
        ConfigurationError: Override sin `=` o con clave vacía
    """
    merged = {name: dict(values) for name, values in sections.items()}
    for item in overrides:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(f"override must be key=value: '{item}'", details={"override": item})
        section, dot, name = key.rpartition(".")
        if not dot:
            section = MAIN_SECTION[command]
        if not name:
            raise ConfigurationError(f"override has an empty key: '{item}'", details={"override": item})
        merged.setdefault(section, {})[name] = value.strip()
    return merged


def _errors(exc: ValidationError) -> list[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or '<section>'}: {err['msg']}" for err in exc.errors()]


def resolve_config(
    command: str,
    text: str | None = None,
    overrides: list[str] | None = None,
    seed: int | None = None,
    source: str = "<config>",
) -> ResolvedConfig:
    """
    Resuelve y valida la configuración de `command`.

    Raises:
        ConfigurationError: Sección o clave desconocida, valor inválido
    """
    if command not in COMMAND_SECTIONS:
        raise ConfigurationError(f"unknown command '{command}'", details={"commands": sorted(COMMAND_SECTIONS)})
    allowed = COMMAND_SECTIONS[command]
    sections = parse_config_text(text, source) if text else {}
    if "" in sections:
        top = sections.pop("")
        sections[MAIN_SECTION[command]] = {**top, **sections.get(MAIN_SECTION[command], {})}
    sections = apply_overrides(sections, overrides or [], command)
    if seed is not None:
        sections.setdefault("run", {})["seed"] = str(seed)

    unknown = sorted(set(sections) - set(allowed))
    if unknown:
        raise ConfigurationError(
            f"unknown config sections for '{command}': {', '.join(unknown)}",
            details={"unknown": unknown, "allowed": list(allowed)},
        )

    validated: dict[str, ConfigSection] = {}
    for name in allowed:
        if name == "spec":
            continue
        try:
            validated[name] = SECTION_MODELS[name].model_validate(sections.get(name, {}))
        except ValidationError as e:
            errors = _errors(e)
            raise ConfigurationError(
                f"invalid [{name}] section: {'; '.join(errors)}",
                details={"section": name, "errors": errors},
            )
    return ResolvedConfig(command, validated, dict(sections.get("spec", {})))


def load_config(
    command: str,
    config_path: Path | None,
    overrides: list[str] | None = None,
    seed: int | None = None,
) -> ResolvedConfig:
    text = read_text(config_path) if config_path is not None else None
    return resolve_config(command, text, overrides, seed, source=str(config_path or "<flags>"))


def make_run_dir(out: Path, resolved: ResolvedConfig, now: datetime | None = None) -> Path:
    """
    Crea `<out>/<comando>-<hash8>-<timestamp>` y escribe `resolved.cfg`.

    Raises:
        PersistenceError: Raíz de salida no escribible
    """
    stamp = (now or datetime.now(UTC)).strftime("%Y%m%dT%H%M%S%fZ")
    run_dir = Path(out) / f"{resolved.command}-{resolved.digest()}-{stamp}"
    try:
        run_dir.mkdir(parents=True, exist_ok=False)
        (run_dir / RESOLVED_NAME).write_text(resolved.render(), encoding="utf-8")
    except OSError as e:
        raise PersistenceError(f"cannot create run directory {run_dir}: {e}", details={"path": str(run_dir)})
    return run_dir
