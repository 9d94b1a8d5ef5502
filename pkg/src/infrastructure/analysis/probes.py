"""
Artifact Probes
===============

Sondas de artefactos de muestreo sobre cualquier sistema onda → onda u
onda → mapa de características:

- tone_probe: tono calibrado, THD fraccional del segmento estacionario
- step_probe: escalón, picos espectrales sobre una línea base suavizada
- aliasing_probe: tono de 1 kHz por una pila de decimaciones ×2
- imaging_probe: señal de baja tasa por un decodificador con upsampling
- mirror_probe: banda espejo equivalente de un sistema a tasa completa
"""

import logging
from collections.abc import Callable
from typing import Any

import numpy as np
from scipy import signal as sps

from src.domain.entities import ENERGY_FLOOR_DB, THD_FLOOR_DB, ArtifactReport, StimulusDescriptor
from src.domain.exceptions import AnalysisError
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, AudioBuffer, CFGrid, Spectrum
from src.infrastructure.analysis.metrics import (
    NUMERIC_FLOOR_DB,
    band_energy,
    mirror_band_energy,
    thd_fractional,
)
from src.infrastructure.dsp import magnitude_spectrum, n_samples, step, tone
from src.infrastructure.nn import (
    AutoencoderBaseline,
    Conv1d,
    Module,
    NearestUpsample,
    SubpixelConv1d,
    ThreeBranchANF,
    TransposedConv1d,
)
from src.infrastructure.training.trainers import model_contexts

logger = logging.getLogger(__name__)

System = Callable[[np.ndarray], Any]

DEFAULT_SETTLE_S = 0.1
STEP_LENGTH = 8192
PEAK_THRESHOLD_DB = 12.0
PEAK_BASELINE_BINS = 9
# Bins más bajos excluidos: ahí domina la envolvente 1/f del propio escalón.
PEAK_SKIP_BINS = 8
SUB_BAND_HZ = 500.0


class ModelSystem:
    """
    Envuelve un modelo como sistema onda → C × T de la misma longitud.

    Los modelos con contexto reciben ceros como contexto izquierdo y
    derecho; los autoencoders se rellenan hasta un múltiplo de 2^depth.
    """

    def __init__(self, model: Module, grid: CFGrid | None = None, branch: int = 0) -> None:
        self.model = model
        self.grid = grid
        self.branch = branch

    def __call__(self, audio: np.ndarray) -> np.ndarray:
        audio = np.asarray(audio, dtype=np.float64).reshape(-1)
        length = audio.size
        left, right = model_contexts(self.model)
        if isinstance(self.model, AutoencoderBaseline):
            block = 2 ** self.model.depth
            right = (-length) % block
        x = np.concatenate([np.zeros(left), audio, np.zeros(right)])[None, :]
        if isinstance(self.model, ThreeBranchANF):
            out = self.model.forward(x)[self.branch]
        else:
            out = self.model.forward(x)
        return np.atleast_2d(out)[:, :length]


def _run(system: System, audio: np.ndarray) -> np.ndarray:
    out = np.asarray(system(audio), dtype=np.float64)
    return np.atleast_2d(out)


def _select_channel(system: System, out: np.ndarray, freq: float, channel: int | None) -> np.ndarray:
    if out.shape[0] == 1:
        return out[0]
    if channel is not None:
        return out[channel]
    grid = getattr(system, "grid", None)
    if grid is None:
        raise AnalysisError(
            "multi-channel output needs a channel or a CF grid",
            details={"channels": int(out.shape[0])},
        )
    return out[grid.nearest(freq)]


def spectral_peaks(
    spectrum: Spectrum,
    threshold_db: float = PEAK_THRESHOLD_DB,
    baseline_bins: int = PEAK_BASELINE_BINS,
    skip_bins: int = PEAK_SKIP_BINS,
) -> list[float]:
    """
    Picos: máximos locales al menos `threshold_db` sobre la mediana móvil.

    Se ignoran los `skip_bins` bins más bajos y el bin de Nyquist.
    """
    db = spectrum.magnitudes_db(floor=1e-300)
    baseline = sps.medfilt(db, kernel_size=baseline_bins)
    peaks = []
    for i in range(max(skip_bins, 1), len(db) - 1):
        if db[i] > db[i - 1] and db[i] >= db[i + 1] and db[i] - baseline[i] >= threshold_db:
            peaks.append(float(spectrum.bin_freqs[i]))
    return peaks


def tone_probe(
    system: System,
    freq: float = 1000.0,
    level: float = 70.0,
    duration: float = 0.1,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    settle_s: float = DEFAULT_SETTLE_S,
    name: str = "system",
    channel: int | None = None,
) -> ArtifactReport:
    """
    Sonda tonal.

    El tono dura settle + duration + settle; se analiza el segmento central
    de `duration` segundos, estacionario y periódico para sistemas de
    memoria finita. Con duraciones múltiplo de 4/freq los armónicos
    fraccionales caen en bins exactos.

    Raises:
        AnalysisError: Salida de otra longitud o sin fundamental
    """
    settle = n_samples(settle_s, sample_rate)
    core = n_samples(duration, sample_rate)
    stimulus = tone(freq, level, settle_s * 2 + duration, sample_rate)
    out = _run(system, stimulus.samples)
    if out.shape[1] != len(stimulus):
        raise AnalysisError(
            "system output length differs from its input",
            details={"input": len(stimulus), "output": int(out.shape[1])},
        )
    analyzed = _select_channel(system, out, freq, channel)[settle:settle + core]
    spectrum = magnitude_spectrum(AudioBuffer(analyzed, sample_rate))
    thd = thd_fractional(spectrum, freq)
    report = ArtifactReport(
        system=name,
        stimulus=StimulusDescriptor("tone", freq, level, duration),
        spectrum=spectrum,
        thd_db=thd,
        thd_floor=thd <= THD_FLOOR_DB,
        band_energies={f"0-{SUB_BAND_HZ:g}": band_energy(spectrum, 0.0, SUB_BAND_HZ)},
    )
    logger.info("tone probe", extra={"system": name, "freq_hz": freq, "thd_db": thd})
    return report


def step_probe(
    system: System,
    level: float = 70.0,
    length: int = STEP_LENGTH,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    name: str = "system",
    channel: int | None = None,
) -> ArtifactReport:
    """Sonda de escalón en N/2 con ventana de Hann; reporta picos espectrales."""
    stimulus = step(level, length, sample_rate=sample_rate)
    out = _run(system, stimulus.samples)
    analyzed = _select_channel(system, out, 1000.0, channel)[:length]
    spectrum = magnitude_spectrum(AudioBuffer(analyzed, sample_rate), window="hann")
    peaks = spectral_peaks(spectrum)
    logger.info("step probe", extra={"system": name, "peaks": len(peaks)})
    return ArtifactReport(
        system=name,
        stimulus=StimulusDescriptor("step", 0.0, level, length / sample_rate),
        spectrum=spectrum,
        peaks_hz=peaks,
    )


# ================================
# Aliasing e imágenes
# ================================

def resampling_factor(stack: Module) -> float:
    """Factor neto de tasa de una pila: >1 sube la tasa, <1 la baja."""
    factor = 1.0
    for _, layer in stack.layers():
        if isinstance(layer, TransposedConv1d):
            factor *= layer.stride
        elif isinstance(layer, SubpixelConv1d):
            factor *= layer.upscale
        elif isinstance(layer, NearestUpsample):
            factor *= layer.factor
        elif isinstance(layer, Conv1d):
            factor /= layer.stride
    return factor


def input_channels(stack: Module) -> int:
    """Canales de entrada de un modelo, leídos de su primera capa con pesos."""
    for _, layer in stack.layers():
        weight = getattr(layer, "W", None)
        if weight is not None:
            return int(weight.shape[0] if isinstance(layer, TransposedConv1d) else weight.shape[1])
    return 1


def _bin_exact_length(freq: float, sample_rate: float, block: int, minimum: int) -> int:
    """Longitud múltiplo de `block` con un número entero de ciclos de `freq`."""
    period = int(round(sample_rate / np.gcd(int(freq), int(sample_rate))))
    unit = int(np.lcm(period, block))
    return unit * max(1, -(-minimum // unit))


def _edge_samples(encoder: Module) -> int:
    """Muestras de entrada, por borde, alcanzadas por el relleno con ceros de la pila."""
    edge, scale = 0, 1
    for _, layer in encoder.layers():
        if isinstance(layer, Conv1d):
            reach = layer.W.shape[2]
            if layer.prefilter is not None:
                reach += layer.prefilter.size
            edge += scale * reach
            scale *= layer.stride
    return edge


def aliasing_probe(
    encoder: Module,
    freq: float = 1000.0,
    level: float = 70.0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    name: str = "encoder",
) -> tuple[ArtifactReport, float]:
    """
    Sonda de aliasing: tono por una pila de decimaciones.

    Se analiza sólo la ventana estacionaria de la salida, lejos de los
    transitorios de borde, con un número entero de ciclos y sin ventana.
    La banda plegada es 0-500 Hz acotada al Nyquist de la tasa de salida;
    leída a la tasa original es la misma energía. Por debajo de
    NUMERIC_FLOOR_DB se reporta el piso de energía.

    Returns:
        (reporte sobre la salida a tasa reducida, energía plegada en dB)
    """
    decimation = int(round(1.0 / resampling_factor(encoder)))
    core = _bin_exact_length(freq, sample_rate, decimation, max(int(sample_rate), 256 * decimation))
    margin = -(-_edge_samples(encoder) // decimation) + 1
    length = core + 2 * margin * decimation
    stimulus = tone(freq, level, length / sample_rate, sample_rate)
    out = encoder.forward(stimulus.samples[None, :])[0]
    out_rate = sample_rate / decimation
    steady = out[margin:margin + core // decimation]
    spectrum = magnitude_spectrum(AudioBuffer(steady, out_rate))
    sub_band = band_energy(spectrum, 0.0, min(SUB_BAND_HZ, out_rate / 2.0))
    if sub_band < NUMERIC_FLOOR_DB:
        sub_band = ENERGY_FLOOR_DB
    report = ArtifactReport(
        system=name,
        stimulus=StimulusDescriptor("tone", freq, level, length / sample_rate),
        spectrum=spectrum,
        band_energies={f"0-{SUB_BAND_HZ:g}": sub_band},
        notes=[f"output rate {out_rate:g} Hz (Nyquist {out_rate / 2:g} Hz)",
               f"steady-state window of {steady.size} samples"],
    )
    logger.info("aliasing probe", extra={"system": name, "decimation": decimation,
                                         "sub500_db": sub_band})
    return report, sub_band


def imaging_probe(
    upsampler: Module | System,
    factor: int | None = None,
    f0: float = 500.0,
    level: float = 70.0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
) -> float:
    """
    Energía (dB) en la banda espejo low_rate − f0 a la salida del upsampler.

    La entrada es un tono f0 ≤ low_rate/2 muestreado a low_rate = fs/U,
    replicado en todos los canales de entrada del decodificador; se analiza
    el segundo central de la salida.

    Raises:
        AnalysisError: f0 fuera de la banda de la tasa baja
    """
    if factor is None:
        if not isinstance(upsampler, Module):
            raise AnalysisError("factor is required for plain callables")
        factor = int(round(resampling_factor(upsampler)))
    if factor <= 1:
        return ENERGY_FLOOR_DB
    low_rate = sample_rate / factor
    if f0 > low_rate / 2.0:
        raise AnalysisError("tone must lie below half the low rate",
                            details={"f0_hz": f0, "low_rate": low_rate})

    low = tone(f0, level, 2.0, low_rate).samples
    if isinstance(upsampler, Module):
        out = upsampler.forward(np.tile(low, (input_channels(upsampler), 1)))[0]
    else:
        out = np.asarray(upsampler(low), dtype=np.float64).reshape(-1)
    start = out.size // 4
    segment = out[start:start + int(sample_rate)]
    spectrum = magnitude_spectrum(AudioBuffer(segment, sample_rate))
    return mirror_band_energy(spectrum, f0, low_rate)


def mirror_probe(
    system: System,
    f0: float = 500.0,
    low_rate: float = DEFAULT_SAMPLE_RATE / 2,
    level: float = 70.0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
    settle_s: float = DEFAULT_SETTLE_S,
    channel: int | None = None,
) -> float:
    """Banda espejo equivalente para un sistema sin upsampling, a tasa completa."""
    settle = n_samples(settle_s, sample_rate)
    stimulus = tone(f0, level, 1.0 + 2 * settle_s, sample_rate)
    out = _select_channel(system, _run(system, stimulus.samples), f0, channel)
    spectrum = magnitude_spectrum(AudioBuffer(out[settle:settle + int(sample_rate)], sample_rate))
    return mirror_band_energy(spectrum, f0, low_rate)

