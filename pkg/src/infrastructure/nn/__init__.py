# ================================
# Neural Network Engine
# ================================
# Kernels, capas con backward manual, modelos dCoNNear y de referencia,
# presets publicados, campo receptivo y verificación de gradientes.
# ================================

from .gradient_check import gradient_check, relative_error
from .layers import (
    Activation,
    Conv1d,
    Layer,
    MemoryBlock,
    NearestUpsample,
    PointwiseConv,
    SubpixelConv1d,
    TransposedConv1d,
    memory_block_forward,
)
from .models import (
    AutoencoderBaseline,
    DCoNNear,
    Module,
    Sequential,
    ThreeBranchANF,
    build_anf_threebranch,
    build_autoencoder_baseline,
    build_dconnear,
    build_strided_stack,
)
from .presets import PRESET_NAMES, PUBLISHED_PARAM_COUNTS, published_anf_specs, published_spec
from .receptive_field import receptive_field_closed_form, receptive_field_empirical

__all__ = [
    "Layer",
    "PointwiseConv",
    "Activation",
    "MemoryBlock",
    "memory_block_forward",
    "Conv1d",
    "TransposedConv1d",
    "SubpixelConv1d",
    "NearestUpsample",
    "Module",
    "Sequential",
    "DCoNNear",
    "ThreeBranchANF",
    "AutoencoderBaseline",
    "build_dconnear",
    "build_anf_threebranch",
    "build_autoencoder_baseline",
    "build_strided_stack",
    "published_spec",
    "published_anf_specs",
    "PRESET_NAMES",
    "PUBLISHED_PARAM_COUNTS",
    "receptive_field_closed_form",
    "receptive_field_empirical",
    "gradient_check",
    "relative_error",
]
