"""
Metrics
=======

Métricas escalares sobre espectros y respuestas de población:

- thd_fractional: distorsión sobre armónicos en cuartos de la fundamental
- band_energy / mirror_band_energy: energía en dB dentro de una banda
- nrmse: error RMS normalizado al máximo de la respuesta de referencia
- q_erb: nitidez CF/ERB a partir de una respuesta al clic
"""

import math

import numpy as np

from src.domain.entities import ENERGY_FLOOR_DB, THD_FLOOR_DB
from src.domain.exceptions import AnalysisError, ShapeError
from src.domain.value_objects import Spectrum

# H_1 relativo al máximo del espectro por debajo del cual no hay fundamental.
_FUNDAMENTAL_FLOOR = 1e-9
# Numerador relativo a H_1 por debajo del cual se reporta el centinela.
_THD_NUMERIC_FLOOR = 1e-8
_ENERGY_FLOOR = 1e-30
# Umbral práctico para "energía en el piso" de salidas calculadas en 64 bits.
NUMERIC_FLOOR_DB = -200.0
DEFAULT_MIRROR_HALF_WIDTH_HZ = 50.0


def thd_fractional(spectrum: Spectrum, f0: float) -> float:
    """
    THD fraccional en dB.

        20·log10( sqrt(Σ_{k≥5} H_{k/4}²) / H_1 )

    H_{k/4} se lee en el bin más cercano a k·f0/4 para k = 5, 6, ... hasta
    Nyquist. Devuelve THD_FLOOR_DB si el numerador es despreciable.

    Raises:
        AnalysisError: "no fundamental detected" si H_1 es despreciable
    """
    mags = spectrum.magnitudes
    h1 = float(mags[spectrum.nearest_bin(f0)])
    peak = float(np.max(mags)) if mags.size else 0.0
    if peak <= 0.0 or h1 <= _FUNDAMENTAL_FLOOR * peak:
        raise AnalysisError("no fundamental detected", details={"f0_hz": f0})

    total = 0.0
    k = 5
    while k * f0 / 4.0 <= spectrum.nyquist:
        total += float(mags[spectrum.nearest_bin(k * f0 / 4.0)]) ** 2
        k += 1
    numerator = math.sqrt(total)
    if numerator < _THD_NUMERIC_FLOOR * h1:
        return THD_FLOOR_DB
    return 20.0 * math.log10(numerator / h1)


def energy_to_db(energy: float) -> float:
    return ENERGY_FLOOR_DB if energy < _ENERGY_FLOOR else 10.0 * math.log10(energy)


def band_energy(spectrum: Spectrum, lo: float, hi: float) -> float:
    """
    Energía (dB) de los bins con lo ≤ f < hi.

    El bin de Nyquist se incluye cuando hi alcanza Nyquist, de modo que
    las bandas disjuntas que cubren todo el espectro suman la energía total.

    Raises:
        AnalysisError: Banda inválida o sin bins
    """
    if not lo < hi:
        raise AnalysisError("band needs lo < hi", details={"lo": lo, "hi": hi})
    freqs = spectrum.bin_freqs
    mask = (freqs >= lo) & (freqs < hi)
    if hi >= spectrum.nyquist:
        mask |= freqs == spectrum.nyquist
    if not np.any(mask):
        raise AnalysisError("empty band", details={"lo": lo, "hi": hi})
    return energy_to_db(float(np.sum(spectrum.magnitudes[mask] ** 2)))


def mirror_band_energy(
    spectrum: Spectrum,
    f0: float,
    low_rate: float,
    half_width: float = DEFAULT_MIRROR_HALF_WIDTH_HZ,
) -> float:
    """Energía (dB) alrededor de la imagen low_rate − f0."""
    center = low_rate - f0
    return band_energy(spectrum, max(center - half_width, 0.0), center + half_width)


def nrmse(p: np.ndarray, p_hat: np.ndarray) -> float:
    """
    NRMSE en porcentaje: 100·sqrt(mean((p − p̂)²)) / max(p).

    Raises:
        ShapeError: Longitudes distintas
        AnalysisError: max(p) no positivo
    """
    p = np.asarray(p, dtype=np.float64)
    p_hat = np.asarray(p_hat, dtype=np.float64)
    if p.shape != p_hat.shape:
        raise ShapeError("nrmse needs equal lengths",
                         details={"p": list(p.shape), "p_hat": list(p_hat.shape)})
    peak = float(np.max(p)) if p.size else 0.0
    if peak <= 0.0:
        raise AnalysisError("reference maximum must be positive", details={"max": peak})
    return 100.0 * math.sqrt(float(np.mean((p - p_hat) ** 2))) / peak


def erb_from_response(response: np.ndarray, sample_rate: float) -> float:
    """
    ERB (Hz) de una respuesta impulsiva: ∫P df / max P con P = |FFT|².

    Raises:
        AnalysisError: Espectro nulo o plano
    """
    power = np.abs(np.fft.rfft(np.asarray(response, dtype=np.float64))) ** 2
    peak = float(np.max(power))
    if peak <= 0.0 or float(np.ptp(power)) <= 1e-12 * peak:
        raise AnalysisError("degenerate flat spectrum")
    df = sample_rate / response.size
    return float(np.sum(power)) * df / peak


def q_erb_from_response(response: np.ndarray, sample_rate: float, cf: float) -> float:
    """CF / ERB de una respuesta impulsiva."""
    return cf / erb_from_response(response, sample_rate)
