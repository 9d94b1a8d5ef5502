# ================================
# Artifact Analysis
# ================================
# Métricas espectrales, sondas de artefactos, curvas auditivas
# y medición del factor de tiempo real.
# ================================

from .auditory_curves import (
    FIBER_NAMES,
    AuditoryStage,
    EmulatedStage,
    FiberCurves,
    SurrogateStage,
    excitation_pattern,
    q_erb,
    rate_level_curve,
    rectified_potential_curve,
    synchrony_level,
)
from .bench import DEFAULT_FRAME_LEN, DEFAULT_N_FRAMES, BenchResult, hardware_description, rtf_bench
from .metrics import (
    NUMERIC_FLOOR_DB,
    band_energy,
    energy_to_db,
    erb_from_response,
    mirror_band_energy,
    nrmse,
    q_erb_from_response,
    thd_fractional,
)
from .probes import (
    ModelSystem,
    aliasing_probe,
    imaging_probe,
    input_channels,
    mirror_probe,
    resampling_factor,
    spectral_peaks,
    step_probe,
    tone_probe,
)

__all__ = [
    "NUMERIC_FLOOR_DB",
    "thd_fractional",
    "energy_to_db",
    "band_energy",
    "mirror_band_energy",
    "nrmse",
    "erb_from_response",
    "q_erb_from_response",
    "ModelSystem",
    "spectral_peaks",
    "tone_probe",
    "step_probe",
    "resampling_factor",
    "input_channels",
    "aliasing_probe",
    "imaging_probe",
    "mirror_probe",
    "FIBER_NAMES",
    "AuditoryStage",
    "SurrogateStage",
    "EmulatedStage",
    "FiberCurves",
    "q_erb",
    "excitation_pattern",
    "rate_level_curve",
    "synchrony_level",
    "rectified_potential_curve",
    "DEFAULT_FRAME_LEN",
    "DEFAULT_N_FRAMES",
    "BenchResult",
    "hardware_description",
    "rtf_bench",
]
