"""
Config Schemas
==============

Modelos Pydantic que validan cada sección del archivo de configuración.

Diferencia con los DTOs
-----------------------

**SCHEMAS (este archivo - Presentation Layer):**
- Validan texto externo: tipos, rangos, valores permitidos
- Rechazan claves desconocidas (`extra="forbid"`)
- Se serializan de vuelta a `key = value` para `resolved.cfg`

**DTOs (application/dto/):**
- Dataclasses simples que reciben los casos de uso
- NO validan: la validación ya ocurrió aquí

Las listas se escriben separadas por comas (`levels = 40, 50, 60, 70`) y
un valor vacío equivale a "sin valor" en los campos opcionales.
"""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.domain.value_objects import DEFAULT_SAMPLE_RATE


def _split(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class ConfigSection(BaseModel):
    """
    Base de todas las secciones: claves desconocidas prohibidas.

    Los defaults también se validan, así un default entero de un campo
    float se escribe igual que al releerlo de resolved.cfg.
    """

    model_config = ConfigDict(extra="forbid", validate_default=True)

    @model_validator(mode="before")
    @classmethod
    def empty_as_none(cls, data: Any) -> Any:
        """`key =` sin valor deja el campo en su default o en None."""
        if isinstance(data, dict):
            return {k: v for k, v in data.items() if not (isinstance(v, str) and v.strip() == "")}
        return data

    def to_pairs(self) -> dict[str, str]:
        """Pares texto para `resolved.cfg`, en el orden de declaración."""
        return {name: format_value(value) for name, value in self.model_dump().items()}


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ================================
# Secciones compartidas
# ================================

class RunSection(ConfigSection):
    """Semilla común de la corrida (corpus, inicialización, barajado)."""

    seed: int = Field(default=0, ge=0)


class ModelSection(ConfigSection):
    """Qué modelo construir o cargar."""

    kind: Literal["dconnear", "autoencoder", "preset"] = "dconnear"
    preset: Literal["cochlear", "ihc", "anf", "ha"] | None = None
    depth: int = Field(default=4, ge=1, le=12)
    upsampling: Literal["transposed", "subpixel", "nearest"] = "transposed"
    antialias: bool = False
    base_channels: int = Field(default=16, ge=1)
    kernel: int = Field(default=16, ge=2)
    checkpoint: Path | None = None

    @model_validator(mode="after")
    def preset_needs_name(self) -> "ModelSection":
        if self.kind == "preset" and self.preset is None:
            raise ValueError("kind = preset needs a preset name (cochlear, ihc, anf, ha)")
        return self


# ================================
# Secciones por comando
# ================================

class CorpusSection(ConfigSection):
    count: int = Field(default=8, ge=0)
    duration_s: float = Field(default=0.5, gt=0)
    sample_rate: float = Field(default=DEFAULT_SAMPLE_RATE, gt=0)
    level_db: float = 70.0
    snr_range: tuple[float, float] | None = None

    _split_snr = field_validator("snr_range", mode="before")(_split)

    @field_validator("snr_range")
    @classmethod
    def ordered_range(cls, v: tuple[float, float] | None) -> tuple[float, float] | None:
        if v is not None and v[0] > v[1]:
            raise ValueError("snr_range must be 'low, high' with low <= high")
        return v


class TrainSection(ConfigSection):
    """
    Tarea de entrenamiento y sus hiperparámetros.

    `task` acepta emulator, ha o se; el error de validación lista los
    valores válidos.
    """

    task: Literal["emulator", "ha", "se"]
    corpus: Path
    stage: Literal["identity", "cochlea", "ihc", "anf"] = "identity"
    profile: str = "NH"
    profile_file: Path | None = None
    n_cf: int = Field(default=21, ge=1)
    window: int = Field(default=256, ge=1)
    flatten_channels: bool = False
    lr: float = Field(default=1e-3, gt=0)
    epochs: int = Field(default=10, ge=0)
    batch: int = Field(default=8, ge=1)
    patience: int = Field(default=5, ge=1)
    val_fraction: float = Field(default=0.1, ge=0, lt=1)
    alpha: float = Field(default=30.0, ge=0)
    beta: float = Field(default=1.0, ge=0)


class ProbeSection(ConfigSection):
    """
    `system`: identity, dconnear, strided, checkpoint o
    baseline:transposed|subpixel|nearest.
    """

    system: str = "identity"
    probes: list[Literal["tone", "step", "aliasing", "imaging"]] = Field(
        default_factory=lambda: ["tone", "step"], min_length=1
    )
    freq: float = Field(default=1000.0, gt=0)
    level: float = 70.0
    duration: float = Field(default=0.1, gt=0)
    step_length: int = Field(default=8192, ge=64)
    imaging_f0: float = Field(default=500.0, gt=0)
    aliasing_depth: int = Field(default=8, ge=1, le=12)
    channel: int | None = Field(default=None, ge=0)
    pdf: bool = False

    _split_probes = field_validator("probes", mode="before")(_split)


class MetricsSection(ConfigSection):
    corpus: Path
    checkpoint: Path | None = None
    profile: str = "Slope35-7,0,0"
    profile_file: Path | None = None
    reference_profile: str = "NH"
    levels: list[float] = Field(default_factory=lambda: [40.0, 50.0, 60.0, 70.0], min_length=1)
    n_cf: int = Field(default=21, ge=1)
    max_clips: int = Field(default=8, ge=1)
    curves: bool = False

    _split_levels = field_validator("levels", mode="before")(_split)


class BenchSection(ConfigSection):
    frame_len: int = Field(default=512, ge=1)
    n_frames: int = Field(default=100, ge=0)


SECTION_MODELS: dict[str, type[ConfigSection]] = {
    "run": RunSection,
    "corpus": CorpusSection,
    "train": TrainSection,
    "model": ModelSection,
    "probe": ProbeSection,
    "metrics": MetricsSection,
    "bench": BenchSection,
}
