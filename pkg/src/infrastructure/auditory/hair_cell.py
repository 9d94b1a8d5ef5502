"""
Inner Hair Cell Surrogate
=========================

Rectificación de media onda → pasa-bajos de primer orden a 3 kHz →
saturación tipo tangente hiperbólica con signo negativo:

    v = −V_MAX · tanh(LPF(max(bm, 0)) / Y_SAT)

La salida es no positiva (potencial de receptor como diferencia negativa).
"""

import math

import numpy as np
from scipy import signal as sps

IHC_CUTOFF_HZ = 3000.0
V_MAX = 0.05
# Escala de saturación (m); fija la compresión de la IHC por encima de ~100 dB SPL.
Y_SAT = 2e-6


def one_pole_coefficients(cutoff_hz: float, sample_rate: float) -> tuple[np.ndarray, np.ndarray]:
    """Pasa-bajos y[n] = (1 − c)·x[n] + c·y[n − 1], c = exp(−2π f_c / f_s)."""
    c = math.exp(-2.0 * math.pi * cutoff_hz / sample_rate)
    return np.array([1.0 - c]), np.array([1.0, -c])


def filter_adjoint(b: np.ndarray, a: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Adjunto de un filtro causal por canal: filtrado en tiempo invertido."""
    return sps.lfilter(b, a, g[..., ::-1], axis=-1)[..., ::-1]


class HairCellSurrogate:
    """Sustituto de IHC, canal por canal."""

    def __init__(self, sample_rate: float = 20000.0, cutoff_hz: float = IHC_CUTOFF_HZ) -> None:
        self.sample_rate = sample_rate
        self._b, self._a = one_pole_coefficients(cutoff_hz, sample_rate)
        self._cache: tuple[np.ndarray, np.ndarray] | None = None

    def forward(self, bm: np.ndarray) -> np.ndarray:
        bm = np.asarray(bm, dtype=np.float64)
        y = sps.lfilter(self._b, self._a, np.maximum(bm, 0.0), axis=-1)
        t = np.tanh(y / Y_SAT)
        self._cache = (bm, t)
        return -V_MAX * t

    def backward(self, g: np.ndarray) -> np.ndarray:
        assert self._cache is not None, "backward called before forward"
        bm, t = self._cache
        gy = g * (-V_MAX / Y_SAT) * (1.0 - t * t)
        gu = filter_adjoint(self._b, self._a, gy)
        return gu * (bm > 0.0)
