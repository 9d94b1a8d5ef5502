"""
Desk-Scale Corpus
=================

Generador sembrado de clips calibrados para entrenamiento a pequeña escala:

- tone_complex: armónicos de una f0 aleatoria con amplitudes 1/k
- am_tone: portadora modulada en amplitud
- filtered_noise: ruido blanco filtrado paso-banda (FIR)

Cada clip se calibra a 70 dB SPL. Para pares de mejora de voz, el clip
limpio se mezcla con ruido de forma espectral tipo voz a una SNR uniforme
en el rango configurado.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import signal as sps

from src.domain.exceptions import ConfigurationError, InvalidSpecError
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, AudioBuffer
from src.infrastructure.dsp import n_samples, raised_cosine_ramp, scale_to_spl

CORPUS_KINDS = ("tone_complex", "am_tone", "filtered_noise")
CALIBRATION_DB = 70.0
HIGH_LEVEL_DB = 130.0

# Niveles de calibración por etapa emulada o tarea de lazo cerrado.
_LEVEL_PLANS: dict[str, tuple[float, ...]] = {
    "identity": (CALIBRATION_DB,),
    "cochlea": (CALIBRATION_DB,),
    "ihc": (CALIBRATION_DB, HIGH_LEVEL_DB),
    "anf": (CALIBRATION_DB, HIGH_LEVEL_DB),
    "ha": (CALIBRATION_DB,),
    "se": (CALIBRATION_DB,),
}


@dataclass(frozen=True, eq=False)
class CorpusItem:
    """Clip del corpus; `noisy` sólo existe cuando se pidió mezcla con ruido."""

    name: str
    kind: str
    clean: AudioBuffer
    level_db: float
    noisy: AudioBuffer | None = None
    snr_db: float | None = None


def speech_shaped_noise(rng: np.random.Generator, length: int,
                        sample_rate: float = DEFAULT_SAMPLE_RATE) -> np.ndarray:
    """Ruido con caída de ~6 dB/octava por encima de 500 Hz (no calibrado)."""
    c = math.exp(-2.0 * math.pi * 500.0 / sample_rate)
    return sps.lfilter([1.0 - c], [1.0, -c], rng.standard_normal(length))


def _tone_complex(rng: np.random.Generator, t: np.ndarray) -> np.ndarray:
    f0 = rng.uniform(100.0, 400.0)
    n_harmonics = int(4000.0 // f0)
    phases = rng.uniform(0.0, 2.0 * np.pi, n_harmonics)
    out = np.zeros_like(t)
    for k in range(1, n_harmonics + 1):
        out += np.sin(2.0 * np.pi * k * f0 * t + phases[k - 1]) / k
    return out


def _am_tone(rng: np.random.Generator, t: np.ndarray) -> np.ndarray:
    carrier = math.exp(rng.uniform(math.log(250.0), math.log(4000.0)))
    mod = rng.uniform(4.0, 120.0)
    depth = rng.uniform(0.3, 1.0)
    return (1.0 + depth * np.sin(2.0 * np.pi * mod * t)) * np.sin(2.0 * np.pi * carrier * t)


def _filtered_noise(rng: np.random.Generator, t: np.ndarray, sample_rate: float) -> np.ndarray:
    nyquist = sample_rate / 2.0
    center = math.exp(rng.uniform(math.log(300.0), math.log(5000.0)))
    low, high = center / math.sqrt(2.0), min(center * math.sqrt(2.0), 0.95 * nyquist)
    taps = sps.firwin(129, [low / nyquist, high / nyquist], pass_zero=False)
    return sps.lfilter(taps, [1.0], rng.standard_normal(t.size))


def mix_at_snr(clean: AudioBuffer, noise: np.ndarray, snr_db: float) -> AudioBuffer:
    """Suma ruido escalado para que 20·log10(rms(clean)/rms(ruido)) == snr_db."""
    clean_rms = float(np.sqrt(np.mean(clean.samples ** 2)))
    noise_rms = float(np.sqrt(np.mean(noise ** 2)))
    if noise_rms == 0.0:
        return clean
    scale = clean_rms / (noise_rms * 10.0 ** (snr_db / 20.0))
    return clean.with_samples(clean.samples + scale * noise)


def generate_corpus(
    count: int,
    duration_s: float,
    seed: int,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    snr_range: tuple[float, float] | None = None,
    level_db: float = CALIBRATION_DB,
) -> list[CorpusItem]:
    """
    Genera `count` clips deterministas para la semilla dada.

    Los tipos se alternan en orden fijo; con `snr_range`, cada clip lleva
    además su versión ruidosa.

    Raises:
        InvalidSpecError: count < 0, duración no positiva o rango SNR invertido
    """
    violations: list[str] = []
    if count < 0:
        violations.append("count must be >= 0")
    if duration_s <= 0:
        violations.append("duration must be > 0")
    if snr_range is not None and snr_range[0] > snr_range[1]:
        violations.append("snr range must satisfy low <= high")
    if violations:
        raise InvalidSpecError("invalid corpus request", details={"violations": violations})

    rng = np.random.default_rng(seed)
    length = n_samples(duration_s, sample_rate)
    t = np.arange(length) / sample_rate
    items: list[CorpusItem] = []
    for i in range(count):
        kind = CORPUS_KINDS[i % len(CORPUS_KINDS)]
        if kind == "tone_complex":
            raw = _tone_complex(rng, t)
        elif kind == "am_tone":
            raw = _am_tone(rng, t)
        else:
            raw = _filtered_noise(rng, t, sample_rate)
        raw = raised_cosine_ramp(raw, 0.005, sample_rate)
        clean = scale_to_spl(AudioBuffer(raw, sample_rate), level_db)
        item = CorpusItem(f"clip_{i:05d}", kind, clean, level_db)
        if snr_range is not None:
            snr = float(rng.uniform(*snr_range))
            noisy = mix_at_snr(clean, speech_shaped_noise(rng, length, sample_rate), snr)
            item = replace(item, noisy=noisy, snr_db=snr)
        items.append(item)
    return items


def level_plan(stage: str) -> tuple[float, ...]:
    """
    Niveles de calibración (dB SPL) de una etapa.

    cochlea: 70; ihc/anf: mitad a 70 y mitad a 130; ha/se: 70.

    Raises:
        ConfigurationError: Etapa desconocida
    """
    if stage not in _LEVEL_PLANS:
        raise ConfigurationError(
            f"unknown stage '{stage}'", details={"known_stages": sorted(_LEVEL_PLANS)}
        )
    return _LEVEL_PLANS[stage]


def calibrate_corpus(data: list[AudioBuffer], stage: str) -> list[AudioBuffer]:
    """Recalibra cada clip alternando los niveles del plan de la etapa."""
    levels = level_plan(stage)
    return [scale_to_spl(buffer, levels[i % len(levels)]) for i, buffer in enumerate(data)]
