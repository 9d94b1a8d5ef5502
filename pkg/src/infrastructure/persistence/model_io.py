"""
Model Checkpoints
=================

Conversión modelo ↔ Checkpoint. La arquitectura (`@arch`) y los pares
`@spec` bastan para reconstruir el modelo antes de cargar sus pesos.
"""

from pathlib import Path

from src.domain.exceptions import CheckpointFormatError, InvalidSpecError
from src.domain.interfaces import Checkpoint, IWeightStore
from src.domain.value_objects import ModelSpec
from src.infrastructure.nn import (
    AutoencoderBaseline,
    DCoNNear,
    Module,
    ThreeBranchANF,
)


def to_checkpoint(model: Module) -> Checkpoint:
    return Checkpoint(arch=model.arch, spec=model.spec_dict(), arrays=model.store.snapshot())


def _prefixed(spec: dict[str, str], prefix: str) -> dict[str, str]:
    return {k[len(prefix):]: v for k, v in spec.items() if k.startswith(prefix)}


def build_from_checkpoint(checkpoint: Checkpoint) -> Module:
    """
    Reconstruye el modelo descrito por el checkpoint y carga sus pesos.

    Raises:
        CheckpointFormatError: Arquitectura desconocida (offset 0)
        InvalidSpecError: Pares @spec inválidos
        ConfigurationError / ShapeError: Arreglos que no coinciden con el modelo
    """
    spec = checkpoint.spec
    model: Module
    if checkpoint.arch == DCoNNear.arch:
        model = DCoNNear(ModelSpec.from_dict(spec))
    elif checkpoint.arch == ThreeBranchANF.arch:
        model = ThreeBranchANF(
            ModelSpec.from_dict(_prefixed(spec, "shared.")),
            ModelSpec.from_dict(_prefixed(spec, "branch.")),
        )
    elif checkpoint.arch == AutoencoderBaseline.arch:
        try:
            model = AutoencoderBaseline(
                depth=int(spec["depth"]),
                upsampling=spec["upsampling"],
                antialias=spec["antialias"] == "true",
                c_in=int(spec["c_in"]),
                c_out=int(spec["c_out"]),
                base_channels=int(spec["base_channels"]),
                kernel=int(spec["kernel"]),
                activation=spec["activation"],
            )
        except (KeyError, ValueError) as e:
            raise InvalidSpecError("invalid autoencoder spec",
                                   details={"violations": [str(e)]})
    else:
        raise CheckpointFormatError(f"unknown architecture '{checkpoint.arch}'", offset=0)
    model.store.load(checkpoint.arrays)
    return model


def save_model(model: Module, path: Path, store: IWeightStore) -> Path:
    return store.save(to_checkpoint(model), path)


def load_model(path: Path, store: IWeightStore) -> Module:
    return build_from_checkpoint(store.load(path))
