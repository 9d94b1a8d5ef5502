"""
Param Store Entity
==================

Almacén de parámetros entrenables con sus ranuras de gradiente.

Una entidad en Clean Architecture:
- Tiene identidad única (id)
- Puede cambiar su estado interno (pesos, gradientes, congelamiento)

Invariantes:
- Cada arreglo de pesos tiene un gradiente de forma idéntica
- Un almacén congelado no acepta escrituras de gradiente ni de pesos
- Los arreglos se comparten por referencia con las capas que los usan:
  actualizar en sitio (`w -= paso`) es visible para la capa
"""

import hashlib
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any
from uuid import UUID, uuid4

import numpy as np

from src.domain.exceptions import ConfigurationError, ShapeError


@dataclass
class ParamStore:
    """
    Conjunto nombrado de pesos y gradientes.

    Ejemplo:
        >>> store = ParamStore()
        >>> grad = store.register("block0.W", np.zeros((4, 4)))
        >>> store.count
        16
    """

    id: UUID = field(default_factory=uuid4)
    weights: dict[str, np.ndarray] = field(default_factory=dict)
    grads: dict[str, np.ndarray] = field(default_factory=dict)
    _frozen: bool = field(default=False, repr=False)

    # ================================
    # Registro
    # ================================

    def register(self, name: str, weight: np.ndarray, grad: np.ndarray | None = None) -> np.ndarray:
        """
        Registra un arreglo de pesos y devuelve su ranura de gradiente.

        Raises:
            ConfigurationError: Si el nombre ya existe
            ShapeError: Si el gradiente no coincide en forma
        """
        if name in self.weights:
            raise ConfigurationError(f"parameter '{name}' already registered")
        if grad is None:
            grad = np.zeros_like(weight)
        if grad.shape != weight.shape:
            raise ShapeError(
                f"gradient slot for '{name}' does not match its weight",
                details={"weight": list(weight.shape), "grad": list(grad.shape)},
            )
        self.weights[name] = weight
        self.grads[name] = grad
        return grad

    def merge(self, prefix: str, other: "ParamStore") -> None:
        """Incorpora otro almacén compartiendo sus arreglos."""
        for name, weight in other.weights.items():
            self.register(f"{prefix}{name}", weight, other.grads[name])

    # ================================
    # Estado
    # ================================

    @property
    def count(self) -> int:
        """Número total de escalares entrenables."""
        return int(sum(w.size for w in self.weights.values()))

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> None:
        self._frozen = True

    def unfreeze(self) -> None:
        self._frozen = False

    def zero_grad(self) -> None:
        for grad in self.grads.values():
            grad.fill(0.0)

    def items(self) -> Iterator[tuple[str, np.ndarray, np.ndarray]]:
        """Itera (nombre, peso, gradiente) en orden de registro."""
        for name, weight in self.weights.items():
            yield name, weight, self.grads[name]

    def fingerprint(self) -> str:
        """Hash SHA-256 de todos los pesos (orden de registro)."""
        digest = hashlib.sha256()
        for name, weight in self.weights.items():
            digest.update(name.encode())
            digest.update(np.ascontiguousarray(weight, dtype=np.float64).tobytes())
        return digest.hexdigest()

    def snapshot(self) -> dict[str, np.ndarray]:
        """Copia profunda de los pesos."""
        return {name: weight.copy() for name, weight in self.weights.items()}

    def load(self, arrays: dict[str, np.ndarray]) -> None:
        """
        Copia valores en los pesos existentes, en sitio.

        Raises:
            ConfigurationError: Si el almacén está congelado o faltan/sobran nombres
            ShapeError: Si alguna forma no coincide
        """
        if self._frozen:
            raise ConfigurationError("cannot load weights into a frozen parameter store")
        missing = sorted(set(self.weights) - set(arrays))
        extra = sorted(set(arrays) - set(self.weights))
        if missing or extra:
            raise ConfigurationError(
                "checkpoint arrays do not match the model",
                details={"missing": missing, "unexpected": extra},
            )
        for name, weight in self.weights.items():
            value = np.asarray(arrays[name])
            if value.shape != weight.shape:
                raise ShapeError(
                    f"shape mismatch for '{name}'",
                    details={"expected": list(weight.shape), "got": list(value.shape)},
                )
            weight[...] = value

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": str(self.id),
            "count": self.count,
            "frozen": self._frozen,
            "arrays": {name: list(w.shape) for name, w in self.weights.items()},
        }
