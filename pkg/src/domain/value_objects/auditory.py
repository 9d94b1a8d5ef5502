"""
Auditory Value Objects
======================

Rejilla de frecuencias características (CF) y perfiles de audición.

Un perfil de audición combina:
- Una curva de pérdida de ganancia de las OHC (dB ≥ 0 por CF), dada por
  puntos de quiebre (frecuencia, dB) interpolados log-linealmente
- Los pesos (H, M, L) de las fibras HSR/MSR/LSR del nervio auditivo
"""

from dataclasses import dataclass

import numpy as np

from src.domain.exceptions import InvalidSpecError

CF_MIN_HZ = 112.0
CF_MAX_HZ = 12000.0
DEFAULT_N_CF = 21

NH_FIBER_WEIGHTS: tuple[float, float, float] = (13.0, 3.0, 3.0)


@dataclass(frozen=True, eq=False)
class CFGrid:
    """
    Rejilla de CFs log-espaciadas en [112, 12000] Hz.

    Ejemplo:
        >>> grid = CFGrid.log_spaced(21)
        >>> len(grid)
        21
    """

    center_freqs: np.ndarray

    def __post_init__(self) -> None:
        freqs = np.array(self.center_freqs, dtype=np.float64)
        if freqs.ndim != 1 or freqs.size < 1:
            raise InvalidSpecError("CF grid needs at least one frequency")
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
            raise InvalidSpecError("CF grid must be strictly increasing")
        # Tolerancia para redondeo de geomspace en los extremos.
        if freqs[0] < CF_MIN_HZ * (1 - 1e-9) or freqs[-1] > CF_MAX_HZ * (1 + 1e-9):
            raise InvalidSpecError(
                "CF grid must lie within [112, 12000] Hz",
                details={"min": float(freqs[0]), "max": float(freqs[-1])},
            )
        freqs.setflags(write=False)
        object.__setattr__(self, "center_freqs", freqs)

    def __len__(self) -> int:
        return int(self.center_freqs.size)

    @classmethod
    def log_spaced(cls, n: int = DEFAULT_N_CF) -> "CFGrid":
        """Rejilla de `n` CFs log-espaciadas entre 112 Hz y 12 kHz."""
        if n < 1:
            raise InvalidSpecError("N_CF must be >= 1", details={"n": n})
        if n == 1:
            return cls(np.array([np.sqrt(CF_MIN_HZ * CF_MAX_HZ)]))
        return cls(np.geomspace(CF_MIN_HZ, CF_MAX_HZ, n))

    def nearest(self, freq: float) -> int:
        """Índice de la CF más cercana a `freq` (en escala logarítmica)."""
        return int(np.argmin(np.abs(np.log(self.center_freqs / freq))))


@dataclass(frozen=True)
class HearingProfile:
    """
    Perfil de audición: pérdida OHC por CF y pesos de fibras.

    Atributos:
        name: Nombre del perfil (p.ej. "NH", "Slope35-7,0,0")
        ohc_breakpoints: Pares (frecuencia Hz, pérdida dB) ordenados por frecuencia
        fiber_weights: Pesos (H, M, L) de fibras HSR, MSR, LSR
    """

    name: str
    ohc_breakpoints: tuple[tuple[float, float], ...] = ()
    fiber_weights: tuple[float, float, float] = NH_FIBER_WEIGHTS

    def __post_init__(self) -> None:
        """Valida pérdidas no negativas y pesos dentro de los valores NH."""
        violations: list[str] = []
        freqs = [f for f, _ in self.ohc_breakpoints]
        if any(f <= 0 for f in freqs):
            violations.append("breakpoint frequencies must be positive")
        if any(b <= a for a, b in zip(freqs, freqs[1:], strict=False)):
            violations.append("breakpoint frequencies must be strictly increasing")
        if any(db < 0 for _, db in self.ohc_breakpoints):
            violations.append("ohc_gain_db must be >= 0")
        if len(self.fiber_weights) != 3:
            violations.append("fiber_weights must be (H, M, L)")
        elif any(w < 0 for w in self.fiber_weights):
            violations.append("fiber_weights must be non-negative")
        elif any(w > nh for w, nh in zip(self.fiber_weights, NH_FIBER_WEIGHTS, strict=True)):
            violations.append("fiber_weights must not exceed the NH weights (13, 3, 3)")
        if violations:
            raise InvalidSpecError(
                f"invalid hearing profile '{self.name}'",
                details={"violations": violations},
            )

    @property
    def is_normal(self) -> bool:
        return self.fiber_weights == NH_FIBER_WEIGHTS and all(
            db == 0 for _, db in self.ohc_breakpoints
        )

    def ohc_gain_db(self, freqs: np.ndarray) -> np.ndarray:
        """
        Pérdida de ganancia (dB) en cada frecuencia.

        Interpolación lineal en log-frecuencia entre puntos de quiebre;
        se mantiene constante fuera del rango definido.
        """
        freqs = np.asarray(freqs, dtype=np.float64)
        if not self.ohc_breakpoints:
            return np.zeros_like(freqs)
        bp_freqs = np.log([f for f, _ in self.ohc_breakpoints])
        bp_db = np.array([db for _, db in self.ohc_breakpoints])
        return np.interp(np.log(freqs), bp_freqs, bp_db)
