"""
Receptive Field
===============

Campo receptivo en forma cerrada y su oráculo empírico por perturbación.

Forma cerrada (reglas de composición implementadas):
    RF = 1 + Σ_bloques ((K1 − 1)·d + K2·d)

Para el modelo de tres ramas el camino atraviesa el tronco y UNA rama.
"""

import copy
import logging

import numpy as np

from src.domain.value_objects import ActivationKind, ModelSpec
from src.infrastructure.nn.layers import (
    Activation,
    Conv1d,
    MemoryBlock,
    PointwiseConv,
    SubpixelConv1d,
    TransposedConv1d,
)
from src.infrastructure.nn.models import Module, ThreeBranchANF

logger = logging.getLogger(__name__)

_MAX_PROBE_LENGTH = 1 << 18


def receptive_field_closed_form(spec: ModelSpec, branch_spec: ModelSpec | None = None) -> int:
    """
    Muestras de entrada que influyen sobre una muestra de salida.

    Args:
        spec: Spec del modelo (o del tronco compartido)
        branch_spec: Spec de rama para el modelo de tres ramas
    """
    span = _blocks_span(spec, 0)
    if branch_spec is not None:
        span += _blocks_span(branch_spec, spec.n_blocks)
    return 1 + span


def _blocks_span(spec: ModelSpec, first_block: int) -> int:
    total = 0
    for i in range(spec.n_blocks):
        d = spec.dilation(first_block + i)
        total += (spec.history_taps - 1) * d + spec.future_taps * d
    return total


def _probe_copy(model: Module) -> Module:
    """
    Copia con pesos positivos constantes y activaciones lineales.

    Sin cancelaciones posibles, el soporte no nulo de la salida coincide
    con el soporte estructural del modelo.
    """
    probe = copy.deepcopy(model)
    for _, layer in probe.layers():
        if isinstance(layer, Activation):
            layer.kind = ActivationKind.LINEAR
        elif isinstance(layer, MemoryBlock):
            layer.W[...] = 1.0 / layer.W.shape[1]
            layer.V[...] = 1.0 / layer.V.shape[1]
            layer.a[...] = 0.5
            layer.b[...] = 0.5
            layer.B[...] = 0.0
            layer.U[...] = 0.0
        elif isinstance(layer, PointwiseConv):
            layer.W[...] = 1.0 / layer.W.shape[1]
            layer.B[...] = 0.0
        elif isinstance(layer, Conv1d | SubpixelConv1d | TransposedConv1d):
            layer.W[...] = 1.0 / layer.W[0].size
            if layer.B is not None:
                layer.B[...] = 0.0
    for name, weight, _ in probe.store.items():
        if name.endswith("skip"):
            weight[...] = 1.0
    return probe


def _output_support(model: Module, length: int) -> tuple[int, int]:
    channels = _input_channels(model)
    x = np.zeros((channels, length))
    x[:, length // 2] = 1.0
    if isinstance(model, ThreeBranchANF):
        outputs = model.forward(x, trim=False)
    elif hasattr(model, "spec"):
        outputs = [model.forward(x, trim=False)]  # type: ignore[call-arg]
    else:
        outputs = [model.forward(x)]
    active = np.zeros(length, dtype=bool)
    for out in outputs:
        active |= np.any(out != 0.0, axis=0)
    idx = np.flatnonzero(active)
    if idx.size == 0:
        return 0, -1
    return int(idx[0]), int(idx[-1])


def _input_channels(model: Module) -> int:
    if isinstance(model, ThreeBranchANF):
        return model.shared_spec.c_in
    spec = getattr(model, "spec", None)
    if spec is not None:
        return int(spec.c_in)
    for _, layer in model.layers():
        if isinstance(layer, PointwiseConv | Conv1d | SubpixelConv1d):
            return int(layer.W.shape[1])
        if isinstance(layer, TransposedConv1d):
            return int(layer.W.shape[0])
    return 1


def receptive_field_empirical(model: Module, start_length: int = 256) -> int:
    """
    Mide el campo receptivo perturbando una muestra central.

    Duplica la longitud de la entrada hasta que el soporte de la salida no
    toca los bordes.
    """
    probe = _probe_copy(model)
    length = start_length
    while True:
        first, last = _output_support(probe, length)
        if last < first:
            return 0
        if first > 0 and last < length - 1:
            span = last - first + 1
            logger.debug("receptive field measured", extra={"length": length, "span": span})
            return span
        if length >= _MAX_PROBE_LENGTH:
            return last - first + 1
        length *= 2
