"""
Signal Value Objects
====================

Value Objects para señales de audio y mapas de características.

Decisiones técnicas:
- Los arreglos se copian a float64 y se marcan de solo lectura, de modo que
  el value object sea realmente inmutable aunque numpy no lo sea
- Las presiones se expresan en Pa (1.0 == 1 Pa), sin normalización
- eq=False: la igualdad de arreglos numpy no es booleana; se comparan con
  `np.array_equal` cuando hace falta
"""

from dataclasses import dataclass, field

import numpy as np

from src.domain.exceptions import InvalidSignalError, ShapeError

# Presión de referencia (Pa) para dB SPL.
P0_PA = 2e-5

DEFAULT_SAMPLE_RATE = 20000


def _frozen_array(values: object, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != ndim:
        raise ShapeError(
            f"Se esperaba un arreglo de {ndim} dimensiones",
            details={"ndim": int(array.ndim)},
        )
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """
    Value Object para una forma de onda mono.

    Atributos:
        samples: Presiones instantáneas en Pa
        sample_rate: Frecuencia de muestreo en Hz

    Ejemplo:
        >>> buffer = AudioBuffer(np.zeros(20000))
        >>> buffer.duration
        1.0
    """

    samples: np.ndarray
    sample_rate: float = DEFAULT_SAMPLE_RATE

    def __post_init__(self) -> None:
        """Valida frecuencia de muestreo y finitud de las muestras."""
        if self.sample_rate <= 0:
            raise InvalidSignalError(
                "sample_rate must be positive",
                details={"sample_rate": self.sample_rate},
            )
        samples = _frozen_array(self.samples, ndim=1)
        if not np.all(np.isfinite(samples)):
            raise InvalidSignalError("samples must be finite (no NaN/Inf)")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration(self) -> float:
        """Duración en segundos."""
        return len(self) / self.sample_rate

    def with_samples(self, samples: np.ndarray) -> "AudioBuffer":
        """Crea un nuevo buffer con la misma frecuencia de muestreo."""
        return AudioBuffer(samples, self.sample_rate)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Value Object para un espectro de magnitud unilateral.

    Atributos:
        bin_freqs: Frecuencias de cada bin (Hz), estrictamente crecientes
        magnitudes: Magnitud lineal (RMS para senoidales centradas en bin)
        resolution: Hz por bin
    """

    bin_freqs: np.ndarray
    magnitudes: np.ndarray
    resolution: float

    def __post_init__(self) -> None:
        """Valida longitudes, orden y signo."""
        freqs = _frozen_array(self.bin_freqs, ndim=1)
        mags = _frozen_array(self.magnitudes, ndim=1)
        if freqs.shape != mags.shape:
            raise ShapeError(
                "bin_freqs and magnitudes must have the same length",
                details={"bins": int(freqs.size), "magnitudes": int(mags.size)},
            )
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
            raise InvalidSignalError("bin_freqs must be strictly increasing")
        if np.any(mags < 0):
            raise InvalidSignalError("magnitudes must be non-negative")
        if self.resolution <= 0:
            raise InvalidSignalError("resolution must be positive")
        object.__setattr__(self, "bin_freqs", freqs)
        object.__setattr__(self, "magnitudes", mags)

    def __len__(self) -> int:
        return int(self.bin_freqs.shape[0])

    @property
    def nyquist(self) -> float:
        return float(self.bin_freqs[-1])

    def nearest_bin(self, freq: float) -> int:
        """Índice del bin más cercano a `freq`."""
        return int(np.argmin(np.abs(self.bin_freqs - freq)))

    def scaled(self, factor: float) -> "Spectrum":
        return Spectrum(self.bin_freqs, self.magnitudes * factor, self.resolution)

    def magnitudes_db(self, floor: float = 1e-15) -> np.ndarray:
        """Magnitudes en dB (20·log10) con piso numérico."""
        return 20.0 * np.log10(np.maximum(self.magnitudes, floor))


@dataclass(frozen=True, eq=False)
class Frame:
    """
    Ventana de análisis con contextos izquierdo y derecho.

    Atributos:
        core: Muestras centrales (L_w)
        left_context: Contexto previo (L_l), relleno con ceros en el borde
        right_context: Contexto posterior (L_r), relleno con ceros en el borde
    """

    core: np.ndarray
    left_context: np.ndarray
    right_context: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "core", _frozen_array(self.core, ndim=1))
        object.__setattr__(self, "left_context", _frozen_array(self.left_context, ndim=1))
        object.__setattr__(self, "right_context", _frozen_array(self.right_context, ndim=1))
        if self.core.size == 0:
            raise InvalidSignalError("frame core must be non-empty")

    def __len__(self) -> int:
        return int(self.left_context.size + self.core.size + self.right_context.size)

    @property
    def samples(self) -> np.ndarray:
        """Ventana completa: contexto izquierdo + núcleo + contexto derecho."""
        return np.concatenate([self.left_context, self.core, self.right_context])


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """
    Mapa de características canales × tiempo.

    Se usa para desplazamiento de membrana basilar, potencial de IHC,
    tasas de disparo de ANF y activaciones ocultas.
    """

    data: np.ndarray
    sample_rate: float = field(default=DEFAULT_SAMPLE_RATE)

    def __post_init__(self) -> None:
        data = _frozen_array(self.data, ndim=2)
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ShapeError(
                "feature map needs at least one channel and one sample",
                details={"shape": list(data.shape)},
            )
        if not np.all(np.isfinite(data)):
            raise InvalidSignalError("feature map values must be finite")
        object.__setattr__(self, "data", data)

    @property
    def channels(self) -> int:
        return int(self.data.shape[0])

    @property
    def time(self) -> int:
        return int(self.data.shape[1])

    @classmethod
    def from_audio(cls, buffer: AudioBuffer) -> "FeatureMap":
        """Vista de un canal de una señal mono."""
        return cls(buffer.samples[None, :], buffer.sample_rate)

    def channel(self, index: int) -> AudioBuffer:
        """Extrae un canal como AudioBuffer."""
        return AudioBuffer(self.data[index], self.sample_rate)
