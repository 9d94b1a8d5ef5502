"""
Storage Interfaces (Ports)
==========================

Contratos de persistencia: checkpoints de pesos, audio y reportes.

El dominio declara QUÉ necesita guardar; la infraestructura decide el
formato concreto (cabecera de texto + float32, WAV float, texto versionado).
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.domain.entities import ArtifactReport
from src.domain.value_objects import AudioBuffer


@dataclass
class Checkpoint:
    """
    Contenido de un archivo de pesos.

    Atributos:
        arch: Arquitectura (dconnear, anf3, autoencoder, ...)
        spec: Pares clave-valor del spec que reconstruye el modelo
        arrays: Arreglos nombrados
    """

    arch: str
    spec: dict[str, str]
    arrays: dict[str, np.ndarray]


class IWeightStore(ABC):
    """Lectura y escritura de checkpoints."""

    @abstractmethod
    def save(self, checkpoint: Checkpoint, path: Path) -> Path:
        """Guarda el checkpoint y devuelve la ruta escrita."""

    @abstractmethod
    def load(self, path: Path) -> Checkpoint:
        """
        Lee un checkpoint.

        Raises:
            ResourceNotFoundError: Si el archivo no existe
            CheckpointFormatError: Si la cabecera está mal formada
        """


class IAudioStore(ABC):
    """Lectura y escritura de audio mono calibrado en Pa."""

    @abstractmethod
    def write(self, buffer: AudioBuffer, path: Path) -> Path:
        """Escribe el buffer y devuelve la ruta."""

    @abstractmethod
    def read(self, path: Path) -> AudioBuffer:
        """Lee un archivo de audio mono."""


class IReportWriter(ABC):
    """Serialización de reportes de artefactos."""

    @abstractmethod
    def render(self, report: ArtifactReport) -> str:
        """Devuelve la representación textual del reporte."""

    @abstractmethod
    def write(self, report: ArtifactReport, path: Path) -> Path:
        """Escribe el reporte en disco."""
