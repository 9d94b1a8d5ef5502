"""
Auditory Nerve Fiber Surrogate
==============================

Tres tipos de fibra (HSR, MSR, LSR) a partir del potencial IHC.

1. Impulso normalizado d = −v / V_MAX ∈ [0, 1)
2. Tasa instantánea sigmoidea con umbral y pendiente por tipo:
       s = spont + (rmax − spont)·(σ((d − θ)/w) − σ0) / (1 − σ0)
   con σ0 = σ(−θ/w), de modo que d = 0 da exactamente la tasa espontánea
3. Adaptación: a = spont + LPF_τ(s − spont) con τ = 10 ms, y
       r = s·(s + c) / (a + c)
   lo que acentúa el inicio y deja r = s en régimen estacionario constante

Todas las tasas son ≥ spont > 0 (spikes/s).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal as sps
from scipy.special import expit

from src.infrastructure.auditory.hair_cell import V_MAX, filter_adjoint

ADAPTATION_TAU_S = 0.010
ADAPTATION_CONSTANT = 100.0


@dataclass(frozen=True)
class FiberType:
    """Parámetros de un tipo de fibra (umbral y pendiente en unidades de impulso)."""

    name: str
    spont: float
    rmax: float
    threshold: float
    width: float

    @property
    def resting_fraction(self) -> float:
        return float(expit(-self.threshold / self.width))


HSR = FiberType("hsr", spont=60.0, rmax=250.0, threshold=0.02, width=0.006)
MSR = FiberType("msr", spont=10.0, rmax=200.0, threshold=0.06, width=0.02)
LSR = FiberType("lsr", spont=1.0, rmax=150.0, threshold=0.12, width=0.04)
FIBER_TYPES: tuple[FiberType, FiberType, FiberType] = (HSR, MSR, LSR)


class FiberSurrogate:
    """Una población de fibras de un tipo, canal por canal."""

    def __init__(self, fiber: FiberType, sample_rate: float = 20000.0,
                 tau_s: float = ADAPTATION_TAU_S, constant: float = ADAPTATION_CONSTANT) -> None:
        self.fiber = fiber
        self.constant = constant
        alpha = math.exp(-1.0 / (tau_s * sample_rate))
        self._b = np.array([1.0 - alpha])
        self._a = np.array([1.0, -alpha])
        self._cache: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    def _scale(self) -> float:
        f = self.fiber
        return (f.rmax - f.spont) / (1.0 - f.resting_fraction)

    def forward(self, ihc: np.ndarray) -> np.ndarray:
        f = self.fiber
        drive = -np.asarray(ihc, dtype=np.float64) / V_MAX
        sig = expit((drive - f.threshold) / f.width)
        s = f.spont + self._scale() * (sig - f.resting_fraction)
        a = f.spont + sps.lfilter(self._b, self._a, s - f.spont, axis=-1)
        self._cache = (sig, s, a)
        return s * (s + self.constant) / (a + self.constant)

    def backward(self, g: np.ndarray) -> np.ndarray:
        assert self._cache is not None, "backward called before forward"
        sig, s, a = self._cache
        c = self.constant
        g_s = g * (2.0 * s + c) / (a + c)
        g_a = -g * s * (s + c) / (a + c) ** 2
        g_s = g_s + filter_adjoint(self._b, self._a, g_a)
        g_drive = g_s * self._scale() * sig * (1.0 - sig) / self.fiber.width
        return -g_drive / V_MAX


class NerveSurrogate:
    """Las tres fibras sobre el mismo potencial IHC."""

    def __init__(self, sample_rate: float = 20000.0) -> None:
        self.fibers = [FiberSurrogate(f, sample_rate) for f in FIBER_TYPES]

    def forward(self, ihc: np.ndarray) -> list[np.ndarray]:
        return [fiber.forward(ihc) for fiber in self.fibers]

    def backward(self, grads: list[np.ndarray]) -> np.ndarray:
        total = np.zeros_like(grads[0])
        for fiber, g in zip(self.fibers, grads, strict=True):
            total += fiber.backward(g)
        return total
