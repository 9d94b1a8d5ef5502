# ================================
# Domain Value Objects
# ================================
# Objetos inmutables definidos por sus atributos.
# Señales, espectros, rejillas de CF, perfiles y especificaciones.
# ================================

from .auditory import (
    CF_MAX_HZ,
    CF_MIN_HZ,
    DEFAULT_N_CF,
    NH_FIBER_WEIGHTS,
    CFGrid,
    HearingProfile,
)
from .model_spec import ActivationKind, ModelSpec, TrainConfig, UpsamplingMode
from .signal import (
    DEFAULT_SAMPLE_RATE,
    P0_PA,
    AudioBuffer,
    FeatureMap,
    Frame,
    Spectrum,
)

__all__ = [
    "P0_PA",
    "DEFAULT_SAMPLE_RATE",
    "AudioBuffer",
    "Spectrum",
    "Frame",
    "FeatureMap",
    "CF_MIN_HZ",
    "CF_MAX_HZ",
    "DEFAULT_N_CF",
    "NH_FIBER_WEIGHTS",
    "CFGrid",
    "HearingProfile",
    "ActivationKind",
    "UpsamplingMode",
    "ModelSpec",
    "TrainConfig",
]
