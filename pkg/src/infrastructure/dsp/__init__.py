# ================================
# DSP
# ================================
# Núcleo de señales y generadores de estímulos.
# ================================

from .signal_core import (
    ANTIALIAS_CUTOFF,
    DEFAULT_LOWPASS_TAPS,
    design_lowpass,
    fir_filter,
    frames_to_array,
    join_cores,
    magnitude_spectrum,
    rms,
    scale_to_spl,
    segment,
    sinc_interpolate,
    spl_to_pa,
)
from .stimuli import am_tone, click, n_samples, raised_cosine_ramp, step, tone, white_noise

__all__ = [
    "ANTIALIAS_CUTOFF",
    "DEFAULT_LOWPASS_TAPS",
    "rms",
    "spl_to_pa",
    "scale_to_spl",
    "segment",
    "frames_to_array",
    "join_cores",
    "magnitude_spectrum",
    "design_lowpass",
    "fir_filter",
    "sinc_interpolate",
    "tone",
    "am_tone",
    "click",
    "step",
    "white_noise",
    "raised_cosine_ramp",
    "n_samples",
]
