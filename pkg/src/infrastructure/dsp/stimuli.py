"""
Stimuli
=======

Generadores de estímulos calibrados para sondas y corpus:
tonos, tonos modulados en amplitud, clics, escalones y ruido.

Los niveles se especifican en dB SPL. Para tonos y tonos AM el nivel
corresponde al RMS de la señal sin rampas; para clics, al nivel de pico
equivalente (amplitud de pico = √2 · p0 · 10^(L/20)).
"""

import math

import numpy as np

from src.domain.exceptions import InvalidSpecError
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, AudioBuffer
from src.infrastructure.dsp.signal_core import spl_to_pa


def n_samples(duration_s: float, sample_rate: float) -> int:
    return int(round(duration_s * sample_rate))


def raised_cosine_ramp(samples: np.ndarray, ramp_s: float, sample_rate: float) -> np.ndarray:
    """Aplica rampas coseno de subida/bajada de `ramp_s` segundos."""
    n_ramp = n_samples(ramp_s, sample_rate)
    if n_ramp <= 0:
        return samples
    if 2 * n_ramp > samples.size:
        raise InvalidSpecError(
            "ramps longer than the stimulus",
            details={"violations": [f"ramp {ramp_s} s"]},
        )
    out = samples.copy()
    ramp = 0.5 * (1.0 - np.cos(np.pi * np.arange(n_ramp) / n_ramp))
    out[:n_ramp] *= ramp
    out[-n_ramp:] *= ramp[::-1]
    return out


def tone(
    freq_hz: float,
    level_db: float,
    duration_s: float,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    ramp_s: float = 0.0,
    phase: float = 0.0,
) -> AudioBuffer:
    """
    Tono puro con RMS (sin rampas) igual a `level_db` dB SPL.

    Ejemplo:
        >>> tone(1000.0, 70.0, 1.0)  # 20000 muestras, RMS ≈ 6.32e-2 Pa
    """
    t = np.arange(n_samples(duration_s, sample_rate)) / sample_rate
    amplitude = math.sqrt(2.0) * spl_to_pa(level_db)
    samples = amplitude * np.sin(2.0 * np.pi * freq_hz * t + phase)
    return AudioBuffer(raised_cosine_ramp(samples, ramp_s, sample_rate), sample_rate)


def am_tone(
    carrier_hz: float,
    mod_hz: float,
    level_db: float,
    duration_s: float,
    depth: float = 1.0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    ramp_s: float = 0.0,
) -> AudioBuffer:
    """
    Tono modulado en amplitud: (1 + m·sin(2π f_m t)) · sin(2π f_c t).

    El nivel se aplica al RMS de la portadora sin modular.
    """
    if not 0.0 <= depth <= 1.0:
        raise InvalidSpecError("modulation depth must be in [0, 1]",
                               details={"violations": [f"depth = {depth}"]})
    t = np.arange(n_samples(duration_s, sample_rate)) / sample_rate
    amplitude = math.sqrt(2.0) * spl_to_pa(level_db)
    envelope = 1.0 + depth * np.sin(2.0 * np.pi * mod_hz * t)
    samples = amplitude * envelope * np.sin(2.0 * np.pi * carrier_hz * t)
    return AudioBuffer(raised_cosine_ramp(samples, ramp_s, sample_rate), sample_rate)


def click(
    level_db: float,
    duration_s: float,
    click_s: float = 100e-6,
    onset_s: float = 0.0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
) -> AudioBuffer:
    """Clic de condensación (pulso positivo) a nivel de pico equivalente."""
    samples = np.zeros(n_samples(duration_s, sample_rate))
    start = n_samples(onset_s, sample_rate)
    width = max(1, n_samples(click_s, sample_rate))
    samples[start:start + width] = math.sqrt(2.0) * spl_to_pa(level_db)
    return AudioBuffer(samples, sample_rate)


def step(
    level_db: float,
    length: int,
    onset: int | None = None,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
) -> AudioBuffer:
    """Escalón unitario en `onset` (por defecto a mitad), amplitud p0·10^(L/20)."""
    onset = length // 2 if onset is None else onset
    samples = np.zeros(length)
    samples[onset:] = spl_to_pa(level_db)
    return AudioBuffer(samples, sample_rate)


def white_noise(
    rng: np.random.Generator,
    length: int,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
) -> AudioBuffer:
    """Ruido blanco gaussiano de varianza unitaria (sin calibrar)."""
    return AudioBuffer(rng.standard_normal(length), sample_rate)
