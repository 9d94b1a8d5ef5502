"""
Auditory Pathway Interface (Port)
=================================

Contrato de un camino auditivo congelado (cóclea → IHC → ANF → población).

En Clean Architecture, las interfaces del dominio definen los "Ports":
- El entrenamiento en lazo cerrado sólo conoce este contrato
- La infraestructura ofrece dos adaptadores: el camino de sustitutos
  analíticos y el camino de emuladores dCoNNear entrenados

El camino expone forward y backward: los gradientes fluyen hacia la
entrada (el procesador HA/SE) pero nunca se escriben en parámetros propios.
"""

from abc import ABC, abstractmethod

import numpy as np

from src.domain.value_objects import HearingProfile


class IAuditoryPathway(ABC):
    """
    Interfaz abstracta de un camino auditivo diferenciable.

    Métodos:
        forward: audio (Pa) -> respuesta AN ponderada r_f (N_CF × T)
        backward: gradiente respecto de r_f -> gradiente respecto del audio
        fingerprint: hash de los parámetros internos (vacío si no tiene)
    """

    @property
    @abstractmethod
    def profile(self) -> HearingProfile:
        """Perfil de audición del camino."""

    @property
    @abstractmethod
    def frozen(self) -> bool:
        """True si ningún parámetro interno puede recibir gradientes."""

    @abstractmethod
    def forward(self, audio: np.ndarray) -> np.ndarray:
        """
        Calcula r_f para una señal mono.

        Args:
            audio: Muestras en Pa (1-D)

        Returns:
            Arreglo N_CF × T' (T' puede ser menor que T si hay recorte de contexto)
        """

    @abstractmethod
    def backward(self, grad_output: np.ndarray) -> np.ndarray:
        """
        Propaga un gradiente de r_f hacia la entrada del último forward.

        Returns:
            Gradiente respecto del audio (misma forma que la entrada)
        """

    @abstractmethod
    def fingerprint(self) -> str:
        """Hash de parámetros internos, para verificar el congelamiento."""

    def freeze(self) -> None:  # noqa: B027
        """Congela parámetros internos (los sustitutos no tienen)."""
