"""
Signal Core
===========

Operaciones básicas sobre señales compartidas por todos los módulos:

- rms / scale_to_spl: calibración absoluta (dB SPL re 2e-5 Pa)
- segment: ventanas con contexto izquierdo y derecho
- magnitude_spectrum: espectro unilateral escalado a RMS
- design_lowpass / fir_filter: FIR de fase lineal (ventana Hamming)
- sinc_interpolate: reconstrucción ideal aproximada para sondas de imagen

Todas las funciones son puras.
"""

import math
from typing import Literal

import numpy as np
from scipy import signal as sps

from src.domain.exceptions import InvalidSignalError, InvalidSpecError
from src.domain.value_objects import P0_PA, AudioBuffer, Frame, Spectrum

DEFAULT_LOWPASS_TAPS = 127
ANTIALIAS_CUTOFF = 0.5


# ================================
# Calibración
# ================================

def rms(buffer: AudioBuffer) -> float:
    """
    Valor RMS de la señal (Pa).

    Raises:
        InvalidSignalError: Si la señal está vacía
    """
    if len(buffer) == 0:
        raise InvalidSignalError("empty signal")
    return float(np.sqrt(np.mean(np.square(buffer.samples))))


def spl_to_pa(level_db: float) -> float:
    """Presión RMS correspondiente a `level_db` dB SPL."""
    return P0_PA * 10.0 ** (level_db / 20.0)


def scale_to_spl(buffer: AudioBuffer, level_db: float) -> AudioBuffer:
    """
    Reescala la señal para que su RMS corresponda a `level_db` dB SPL.

    Raises:
        InvalidSignalError: Si el RMS es cero
    """
    current = rms(buffer)
    if current == 0.0:
        raise InvalidSignalError("silent signal cannot be calibrated")
    return buffer.with_samples(buffer.samples * (spl_to_pa(level_db) / current))


# ================================
# Segmentación
# ================================

def segment(
    signal: np.ndarray,
    window: int,
    left: int,
    right: int,
    hop: int,
) -> list[Frame]:
    """
    Divide la señal en frames con contexto.

    El frame k cubre las muestras núcleo [k·hop, k·hop + window); los
    contextos se toman de las muestras vecinas y se rellenan con ceros
    fuera de la señal. El último núcleo se completa con ceros.

    Args:
        signal: Señal 1-D
        window: Longitud del núcleo (L_w)
        left, right: Longitudes de contexto (L_l, L_r)
        hop: Salto entre frames

    Raises:
        InvalidSpecError: Si window o hop no son positivos, o los contextos negativos
    """
    if window <= 0 or hop <= 0:
        raise InvalidSpecError(
            "window and hop must be positive",
            details={"violations": [f"L_w = {window}", f"hop = {hop}"]},
        )
    if left < 0 or right < 0:
        raise InvalidSpecError(
            "context lengths must be >= 0",
            details={"violations": [f"L_l = {left}", f"L_r = {right}"]},
        )
    signal = np.asarray(signal, dtype=np.float64)
    n = signal.size
    n_frames = 1 if n <= window else math.ceil((n - window) / hop) + 1

    span = (n_frames - 1) * hop + window
    padded = np.zeros(left + span + right)
    padded[left:left + n] = signal

    frames: list[Frame] = []
    for k in range(n_frames):
        start = k * hop
        frames.append(Frame(
            core=padded[left + start:left + start + window],
            left_context=padded[start:left + start],
            right_context=padded[left + start + window:left + start + window + right],
        ))
    return frames


def frames_to_array(frames: list[Frame]) -> np.ndarray:
    """Apila frames completos en un arreglo (n_frames × longitud)."""
    return np.stack([frame.samples for frame in frames])


def join_cores(frames: list[Frame]) -> np.ndarray:
    """Concatena los núcleos (inversa de segment con hop == L_w)."""
    return np.concatenate([frame.core for frame in frames])


# ================================
# Espectro
# ================================

def magnitude_spectrum(
    buffer: AudioBuffer,
    window: Literal["none", "hann"] = "none",
) -> Spectrum:
    """
    Espectro de magnitud unilateral.

    Escalado: una senoidal centrada en un bin tiene magnitud igual a su RMS
    (bins interiores |X|·√2/S, bins DC y Nyquist |X|/S, con S la suma de la
    ventana). Sin ventana la energía espectral coincide con mean(x²).

    Raises:
        InvalidSignalError: Si la señal tiene menos de 2 muestras
    """
    n = len(buffer)
    if n < 2:
        raise InvalidSignalError("spectrum needs at least 2 samples", details={"length": n})
    if window == "hann":
        taper = sps.get_window("hann", n, fftbins=True)
    elif window == "none":
        taper = np.ones(n)
    else:
        raise InvalidSpecError(f"unknown window '{window}'", details={"violations": ["window"]})

    spectrum = np.abs(np.fft.rfft(buffer.samples * taper)) / float(np.sum(taper))
    spectrum[1:] *= math.sqrt(2.0)
    if n % 2 == 0:
        spectrum[-1] /= math.sqrt(2.0)
    freqs = np.fft.rfftfreq(n, d=1.0 / buffer.sample_rate)
    return Spectrum(freqs, spectrum, buffer.sample_rate / n)


# ================================
# Filtros FIR
# ================================

def design_lowpass(cutoff_norm: float, taps: int = DEFAULT_LOWPASS_TAPS) -> np.ndarray:
    """
    Pasa-bajos FIR de fase lineal (sinc enventanada con Hamming).

    Args:
        cutoff_norm: Corte como fracción de Nyquist, en (0, 1)
        taps: Número de coeficientes (impar, ≥ 3)

    Returns:
        Coeficientes exactamente simétricos con ganancia DC ≈ 1
    """
    violations = []
    if not 0.0 < cutoff_norm < 1.0:
        violations.append("cutoff_norm must be in (0, 1)")
    if taps < 3:
        violations.append("taps must be >= 3")
    if taps % 2 == 0:
        violations.append("taps must be odd (phase symmetry required)")
    if violations:
        raise InvalidSpecError("invalid low-pass design", details={"violations": violations})

    coeffs = sps.firwin(taps, cutoff_norm, window="hamming")
    # Simetrización bit a bit (la suma en punto flotante es conmutativa).
    return 0.5 * (coeffs + coeffs[::-1])


def fir_filter(x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """
    Filtra cada canal con un FIR de fase lineal, sin retardo.

    Para coeficientes simétricos de longitud impar, el filtrado 'same' es
    su propio adjunto, lo que simplifica el backward de las capas.

    Args:
        x: Señal 1-D o arreglo canales × tiempo
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        return np.convolve(x, coeffs, mode="same")
    return np.stack([np.convolve(row, coeffs, mode="same") for row in x])


def sinc_interpolate(x: np.ndarray, factor: int, taps: int = 255) -> np.ndarray:
    """
    Interpolación por `factor` con inserción de ceros y pasa-bajos FIR.

    El corte se ubica en 1/factor de Nyquist; la ganancia se compensa
    multiplicando por `factor`.
    """
    if factor < 1:
        raise InvalidSpecError("factor must be >= 1", details={"violations": ["factor"]})
    x = np.asarray(x, dtype=np.float64)
    if factor == 1:
        return x.copy()
    stuffed = np.zeros(x.size * factor)
    stuffed[::factor] = x
    return factor * fir_filter(stuffed, design_lowpass(1.0 / factor, taps))
