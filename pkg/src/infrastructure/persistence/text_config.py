"""
Text Config Files
=================

Formato plano `key = value` con encabezados `[section]` opcionales.

Se usa para:
- Configuración de comandos (y su copia resuelta `resolved.cfg`)
- Archivos de modelo (campos de ModelSpec, sin secciones)
- Archivos de perfil de audición (`ohc_gain_db`, `weights`)

Las líneas vacías y las que empiezan con `#` se ignoran. Las claves que
aparecen antes de la primera sección pertenecen a la sección "".
"""

import re
from pathlib import Path

from src.domain.exceptions import (
    ConfigurationError,
    InvalidSpecError,
    PersistenceError,
    ResourceNotFoundError,
)
from src.domain.value_objects import NH_FIBER_WEIGHTS, HearingProfile, ModelSpec

Sections = dict[str, dict[str, str]]

_SECTION = re.compile(r"^\[([A-Za-z0-9_.-]*)\]$")
_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


def parse_config_text(text: str, source: str = "<string>") -> Sections:
    """
    Parsea texto `key = value` en secciones.

    Raises:
        ConfigurationError: Línea mal formada o clave repetida
    """
    sections: Sections = {"": {}}
    current = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _SECTION.match(line)
        if match:
            current = match.group(1)
            sections.setdefault(current, {})
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not _KEY.match(key):
            raise ConfigurationError(
                "malformed config line",
                details={"source": source, "line": lineno, "text": raw},
            )
        if key in sections[current]:
            raise ConfigurationError(
                f"duplicate key '{key}'",
                details={"source": source, "line": lineno, "section": current},
            )
        sections[current][key] = value.strip()
    if not sections[""]:
        del sections[""]
    return sections


def render_config(sections: Sections) -> str:
    """Inverso de parse_config_text; orden de secciones y claves preservado."""
    lines: list[str] = []
    for name, values in sections.items():
        if name:
            if lines:
                lines.append("")
            lines.append(f"[{name}]")
        lines.extend(f"{key} = {value}" for key, value in values.items())
    return "\n".join(lines) + "\n"


def read_text(path: Path) -> str:
    path = Path(path)
    if not path.is_file():
        raise ResourceNotFoundError(f"file not found: {path}", details={"path": str(path)})
    return path.read_text(encoding="utf-8")


def write_text(text: str, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise PersistenceError(f"cannot write {path}: {e}", details={"path": str(path)})
    return path


def read_config(path: Path) -> Sections:
    return parse_config_text(read_text(path), str(path))


# ================================
# Archivos de modelo
# ================================

def read_model_config(path: Path) -> ModelSpec:
    """
    Lee un ModelSpec desde un archivo `key = value` sin secciones.

    Raises:
        InvalidSpecError: Claves desconocidas o valores inválidos
    """
    sections = read_config(path)
    extra = sorted(name for name in sections if name)
    if extra:
        raise InvalidSpecError(
            "model config files have no sections",
            details={"violations": [f"unexpected section [{name}]" for name in extra]},
        )
    return ModelSpec.from_dict(sections.get("", {}))


def write_model_config(spec: ModelSpec, path: Path) -> Path:
    values = {k: ("none" if v is None else str(v).lower() if isinstance(v, bool) else str(v))
              for k, v in spec.to_dict().items()}
    return write_text(render_config({"": values}), path)


# ================================
# Archivos de perfil
# ================================

def parse_profile_text(text: str, name: str) -> HearingProfile:
    """
    Perfil desde `ohc_gain_db = f1:g1, f2:g2, ...` y `weights = H,M,L`.

    Ambas claves son opcionales (sin pérdida OHC; pesos NH).

    Raises:
        ConfigurationError: Claves desconocidas o valores mal formados
        InvalidSpecError: Perfil fuera de rango
    """
    values = parse_config_text(text, name).get("", {})
    unknown = sorted(set(values) - {"ohc_gain_db", "weights"})
    if unknown:
        raise ConfigurationError("unknown profile keys", details={"unknown": unknown})
    try:
        breakpoints = tuple(
            (float(f), float(g))
            for f, g in (item.split(":") for item in _items(values.get("ohc_gain_db", "")))
        )
        weights = (
            tuple(float(w) for w in _items(values["weights"]))
            if "weights" in values else NH_FIBER_WEIGHTS
        )
    except ValueError as e:
        raise ConfigurationError(f"malformed profile value: {e}", details={"profile": name})
    return HearingProfile(name, breakpoints, weights)  # type: ignore[arg-type]


def _items(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def render_profile(profile: HearingProfile) -> str:
    gains = ", ".join(f"{f:g}:{g:g}" for f, g in profile.ohc_breakpoints)
    weights = ",".join(f"{w:g}" for w in profile.fiber_weights)
    return render_config({"": {"ohc_gain_db": gains, "weights": weights}})


def read_profile(path: Path) -> HearingProfile:
    return parse_profile_text(read_text(path), Path(path).stem)
