"""
Shared Use-Case Helpers
=======================

Piezas que comparten varios comandos:

- build_model: construye o carga el modelo pedido por un ModelRequestDTO
- load_corpus: lee un corpus generado por gen-corpus (manifest + WAV)
- resolve_profile: perfil por nombre o desde archivo
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from src.application.dto import ModelRequestDTO
from src.domain.exceptions import ConfigurationError, ResourceNotFoundError
from src.domain.interfaces import IAudioStore, IWeightStore
from src.domain.value_objects import AudioBuffer, HearingProfile, ModelSpec
from src.infrastructure.auditory import make_profile
from src.infrastructure.nn import (
    AutoencoderBaseline,
    DCoNNear,
    Module,
    ThreeBranchANF,
    published_anf_specs,
    published_spec,
)
from src.infrastructure.persistence import load_model, read_profile, read_rows

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.csv"
MANIFEST_COLUMNS = ("name", "kind", "level_db", "snr_db", "clean", "noisy")

# Modelo dCoNNear de escritorio: 4 bloques (dilataciones 1..8), H = 16.
DESK_SPEC: dict[str, str] = {
    "blocks_per_repeat": "4",
    "repeats": "1",
    "history_taps": "4",
    "future_taps": "2",
    "hidden": "16",
    "left_context": "64",
    "right_context": "16",
}


def build_model(
    request: ModelRequestDTO,
    c_in: int = 1,
    c_out: int = 1,
    weight_store: IWeightStore | None = None,
    three_branch: bool = False,
    passthrough: bool = False,
) -> Module:
    """
    Construye el modelo pedido con los canales que impone la tarea.

    Raises:
        ConfigurationError: Checkpoint sin almacén o tipo de modelo desconocido
        InvalidSpecError: Pares de spec inválidos
    """
    if request.checkpoint is not None:
        if weight_store is None:
            raise ConfigurationError("a weight store is required to load checkpoints")
        model = load_model(request.checkpoint, weight_store)
        logger.info("model loaded", extra={"checkpoint": str(request.checkpoint), "arch": model.arch})
        return model

    if request.kind == "autoencoder":
        return AutoencoderBaseline(
            depth=request.depth,
            upsampling=request.upsampling,
            antialias=request.antialias,
            seed=request.seed,
            c_in=c_in,
            c_out=c_out,
            base_channels=request.base_channels,
            kernel=request.kernel,
        )

    if request.kind == "preset":
        if request.preset is None:
            raise ConfigurationError("kind = preset needs a preset name")
        if three_branch or request.preset == "anf":
            shared, branch = published_anf_specs(c_out)
            return ThreeBranchANF(shared, branch, seed=request.seed)
        spec = published_spec(request.preset, max(c_in, c_out))
        return DCoNNear(spec.with_changes(c_in=c_in, c_out=c_out), seed=request.seed)

    if request.kind != "dconnear":
        raise ConfigurationError(
            f"unknown model kind '{request.kind}'",
            details={"known_kinds": ["dconnear", "autoencoder", "preset"]},
        )
    values = {**DESK_SPEC, **request.spec, "c_in": str(c_in), "c_out": str(c_out)}
    if passthrough:
        values["passthrough"] = "true"
    spec = ModelSpec.from_dict(values)
    if three_branch:
        if "act_final" not in request.spec:
            spec = spec.with_changes(act_final="relu")
        return ThreeBranchANF(spec, spec, seed=request.seed)
    return DCoNNear(spec, seed=request.seed)


def resolve_profile(name: str, profile_file: Path | None = None) -> HearingProfile:
    return read_profile(profile_file) if profile_file is not None else make_profile(name)


# ================================
# Corpus
# ================================

@dataclass(frozen=True, eq=False)
class CorpusEntry:
    name: str
    kind: str
    clean: AudioBuffer
    noisy: AudioBuffer | None


def load_corpus(directory: Path, audio_store: IAudioStore) -> list[CorpusEntry]:
    """
    Lee los clips listados en `directory/manifest.csv`.

    Raises:
        ResourceNotFoundError: Directorio o manifiesto inexistente
    """
    manifest = Path(directory) / MANIFEST_NAME
    if not manifest.is_file():
        raise ResourceNotFoundError(f"corpus manifest not found: {manifest}",
                                    details={"path": str(manifest)})
    entries = []
    for row in read_rows(manifest):
        noisy = audio_store.read(manifest.parent / row["noisy"]) if row.get("noisy") else None
        entries.append(CorpusEntry(row["name"], row["kind"], audio_store.read(manifest.parent / row["clean"]), noisy))
    logger.info("corpus loaded", extra={"path": str(directory), "clips": len(entries)})
    return entries
