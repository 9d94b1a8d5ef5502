"""
Training Run Entity
===================

Registro de una corrida de entrenamiento: pérdidas por época, trayectoria
de la tasa de aprendizaje y referencia al checkpoint final.

Invariantes:
- La trayectoria de lr es no creciente
- Las épocas registradas coinciden con las ejecutadas (numeración 1..n)
"""

from dataclasses import dataclass, field
from typing import Any
from uuid import UUID, uuid4

from src.domain.exceptions import ConfigurationError


@dataclass(frozen=True)
class EpochRecord:
    """Pérdidas y lr de una época."""

    epoch: int
    train_loss: float
    val_loss: float
    lr: float


@dataclass
class TrainingRun:
    """
    Entidad: corrida de entrenamiento.

    Atributos:
        task: Tarea entrenada (emulator, ha, se)
        initial_val_loss: Pérdida de validación antes de la primera época
        initial_lr: Tasa de aprendizaje inicial
        epochs: Registros por época
        checkpoint: Ruta del checkpoint final (si se guardó)
    """

    task: str
    initial_val_loss: float
    initial_lr: float
    id: UUID = field(default_factory=uuid4)
    epochs: list[EpochRecord] = field(default_factory=list)
    checkpoint: str | None = None

    # ================================
    # Métodos de comportamiento
    # ================================

    def record_epoch(self, train_loss: float, val_loss: float, lr: float) -> EpochRecord:
        """
        Agrega el registro de la siguiente época.

        Raises:
            ConfigurationError: Si la lr crece respecto de la época anterior
        """
        if lr > self.current_lr:
            raise ConfigurationError(
                "learning-rate trajectory must be non-increasing",
                details={"previous": self.current_lr, "new": lr},
            )
        record = EpochRecord(len(self.epochs) + 1, float(train_loss), float(val_loss), float(lr))
        self.epochs.append(record)
        return record

    @property
    def current_lr(self) -> float:
        return self.epochs[-1].lr if self.epochs else self.initial_lr

    @property
    def epochs_executed(self) -> int:
        return len(self.epochs)

    @property
    def val_losses(self) -> list[float]:
        return [r.val_loss for r in self.epochs]

    @property
    def train_losses(self) -> list[float]:
        return [r.train_loss for r in self.epochs]

    @property
    def lr_trajectory(self) -> list[float]:
        return [r.lr for r in self.epochs]

    def best_val_trajectory(self) -> list[float]:
        """Mínimo acumulado de la pérdida de validación, comenzando en la inicial."""
        best = self.initial_val_loss
        trajectory = [best]
        for loss in self.val_losses:
            best = min(best, loss)
            trajectory.append(best)
        return trajectory

    @property
    def best_val_loss(self) -> float:
        return self.best_val_trajectory()[-1]

    @property
    def final_val_loss(self) -> float:
        return self.epochs[-1].val_loss if self.epochs else self.initial_val_loss

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": str(self.id),
            "task": self.task,
            "initial_val_loss": self.initial_val_loss,
            "initial_lr": self.initial_lr,
            "epochs": [r.__dict__ for r in self.epochs],
            "checkpoint": self.checkpoint,
        }
