"""
Cochlea Surrogate
=================

Sustituto analítico del desplazamiento de la membrana basilar (BM).

Por cada CF:
1. Gammatone complejo de 4º orden (cascada de cuatro polos complejos
   idénticos); la parte real tiene ganancia ≈ 1 en la CF
2. Reducción de ganancia OHC: factor 10^(−pérdida/20) por CF
3. Compresión de quiebre: lineal bajo la rodilla (30 dB SPL de pico),
   exponente 0.3 por encima
4. Escala a metros (1e-4 m/Pa)

El backward usa el filtro real equivalente en tiempo invertido (adjunto)
y la derivada de la compresión.
"""

import math

import numpy as np
from scipy import signal as sps

from src.domain.value_objects import P0_PA, CFGrid, HearingProfile

GAMMATONE_ORDER = 4
COMPRESSION_EXPONENT = 0.3
# Rodilla: amplitud de pico de un tono de 30 dB SPL.
KNEE_PA = math.sqrt(2.0) * P0_PA * 10.0 ** (30.0 / 20.0)
DISPLACEMENT_PER_PA = 1e-4


def erb_hz(freq: np.ndarray | float) -> np.ndarray:
    """Ancho de banda rectangular equivalente (Glasberg y Moore)."""
    return 24.7 + 0.107939 * np.asarray(freq, dtype=np.float64)


def gammatone_bandwidth_factor(order: int = GAMMATONE_ORDER) -> float:
    """
    Relación ERB / parámetro de ancho de banda b de un gammatone de orden n.

    a = π·(2n − 2)!·2^−(2n − 2) / ((n − 1)!)²  (≈ 0.9817 para n = 4)
    """
    n = order
    return math.pi * math.factorial(2 * n - 2) * 2.0 ** (-(2 * n - 2)) / math.factorial(n - 1) ** 2


def gammatone_coefficients(cf: float, sample_rate: float,
                           order: int = GAMMATONE_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """
    Coeficientes (b, a) complejos del gammatone en la CF dada.

    La ganancia 2·(1 − λ)^n normaliza la parte real a ganancia unidad en la CF.
    """
    bandwidth = float(erb_hz(cf)) / gammatone_bandwidth_factor(order)
    lam = math.exp(-2.0 * math.pi * bandwidth / sample_rate)
    pole = lam * np.exp(2j * math.pi * cf / sample_rate)
    a = np.poly(np.full(order, pole))
    b = np.array([2.0 * (1.0 - lam) ** order], dtype=np.complex128)
    return b, a


def compress(u: np.ndarray, knee: float = KNEE_PA) -> np.ndarray:
    """Compresión de quiebre: u bajo la rodilla, k·(|u|/k)^0.3 por encima."""
    mag = np.abs(u)
    above = mag > knee
    out = u.copy()
    out[above] = np.sign(u[above]) * knee * (mag[above] / knee) ** COMPRESSION_EXPONENT
    return out


def compress_derivative(u: np.ndarray, knee: float = KNEE_PA) -> np.ndarray:
    mag = np.abs(u)
    deriv = np.ones_like(u)
    above = mag > knee
    deriv[above] = COMPRESSION_EXPONENT * (mag[above] / knee) ** (COMPRESSION_EXPONENT - 1.0)
    return deriv


class CochleaSurrogate:
    """
    Banco gammatone + pérdida OHC + compresión.

    Ejemplo:
        >>> cochlea = CochleaSurrogate(CFGrid.log_spaced(21), make_profile("NH"))
        >>> bm = cochlea.forward(audio_samples)   # 21 × T, metros
    """

    def __init__(self, grid: CFGrid, profile: HearingProfile, sample_rate: float = 20000.0) -> None:
        self.grid = grid
        self.profile = profile
        self.sample_rate = sample_rate
        self.gains = 10.0 ** (-profile.ohc_gain_db(grid.center_freqs) / 20.0)
        self._filters = [gammatone_coefficients(cf, sample_rate) for cf in grid.center_freqs]
        self._cache: np.ndarray | None = None

    def filterbank(self, audio: np.ndarray) -> np.ndarray:
        """Salida lineal del banco gammatone (parte real), N_CF × T."""
        audio = np.asarray(audio, dtype=np.float64).reshape(-1)
        return np.stack([np.real(sps.lfilter(b, a, audio)) for b, a in self._filters])

    def forward(self, audio: np.ndarray) -> np.ndarray:
        u = self.gains[:, None] * self.filterbank(audio)
        self._cache = u
        return DISPLACEMENT_PER_PA * compress(u)

    def backward(self, g: np.ndarray) -> np.ndarray:
        assert self._cache is not None, "backward called before forward"
        gu = DISPLACEMENT_PER_PA * g * compress_derivative(self._cache) * self.gains[:, None]
        grad = np.zeros(gu.shape[1])
        for (b, a), row in zip(self._filters, gu, strict=True):
            grad += np.real(sps.lfilter(b, a, row[::-1]))[::-1]
        return grad
