"""
Artifact Report Entity
======================

Resultado de una sonda de artefactos: estímulo, espectro, THD fraccional,
energías por banda y picos espectrales.

El `id` es determinista (uuid5 sobre el contenido) para que dos corridas
con la misma semilla produzcan reportes byte-idénticos.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Any
from uuid import NAMESPACE_URL, UUID, uuid5

import numpy as np

from src.domain.value_objects import Spectrum

# Centinela reportado cuando no hay armónicos fraccionales sobre el ruido numérico.
THD_FLOOR_DB = -160.0
# Piso de energía de banda (energía 1e-30).
ENERGY_FLOOR_DB = -300.0


@dataclass(frozen=True)
class StimulusDescriptor:
    """Descripción del estímulo de una sonda."""

    kind: str
    freq_hz: float
    level_db: float
    duration_s: float = 0.0


@dataclass
class ArtifactReport:
    """
    Entidad: reporte de artefactos de una sonda.

    Atributos:
        system: Nombre del sistema evaluado
        stimulus: Descriptor del estímulo
        spectrum: Espectro de magnitud de la salida analizada
        thd_db: THD fraccional (dB) o None si la sonda no lo calcula
        thd_floor: True si thd_db es el centinela de piso
        band_energies: Banda ("lo-hi") -> energía en dB
        peaks_hz: Frecuencias de picos espectrales detectados
        notes: Observaciones libres
    """

    system: str
    stimulus: StimulusDescriptor
    spectrum: Spectrum
    thd_db: float | None = None
    thd_floor: bool = False
    band_energies: dict[str, float] = field(default_factory=dict)
    peaks_hz: list[float] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Valida que el THD sea finito o esté marcado como piso."""
        if self.thd_db is not None and not np.isfinite(self.thd_db) and not self.thd_floor:
            raise ValueError("thd_db must be finite or flagged as floor")

    @property
    def id(self) -> UUID:
        """Identificador determinista derivado del contenido."""
        digest = hashlib.sha256()
        digest.update(repr(self._content_key()).encode())
        digest.update(self.spectrum.magnitudes.tobytes())
        return uuid5(NAMESPACE_URL, f"aliasfree:report:{digest.hexdigest()}")

    def _content_key(self) -> tuple[Any, ...]:
        return (
            self.system,
            self.stimulus,
            self.thd_db,
            self.thd_floor,
            tuple(sorted(self.band_energies.items())),
            tuple(self.peaks_hz),
            tuple(self.notes),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": str(self.id),
            "system": self.system,
            "stimulus": {
                "kind": self.stimulus.kind,
                "freq_hz": self.stimulus.freq_hz,
                "level_db": self.stimulus.level_db,
                "duration_s": self.stimulus.duration_s,
            },
            "thd_db": self.thd_db,
            "thd_floor": self.thd_floor,
            "band_energies": dict(self.band_energies),
            "peaks_hz": list(self.peaks_hz),
            "bins": len(self.spectrum),
            "resolution_hz": self.spectrum.resolution,
            "notes": list(self.notes),
        }
