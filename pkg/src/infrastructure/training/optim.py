"""
Optimization
============

Adam sobre un ParamStore y el programa de tasa de aprendizaje por meseta.
"""

from dataclasses import dataclass, field

import numpy as np

from src.domain.entities import ParamStore, TrainingRun

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class AdamState:
    """Momentos por parámetro y contador de pasos (t = 0 al iniciar)."""

    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0


def adam_step(store: ParamStore, state: AdamState, lr: float) -> AdamState:
    """
    Un paso de Adam con corrección de sesgo, en sitio sobre los pesos.

    Los gradientes se leen de `store`; un store congelado no se modifica.
    """
    if store.frozen:
        return state
    state.t += 1
    correction1 = 1.0 - BETA1 ** state.t
    correction2 = 1.0 - BETA2 ** state.t
    for name, weight, grad in store.items():
        m = state.m.setdefault(name, np.zeros_like(weight))
        v = state.v.setdefault(name, np.zeros_like(weight))
        m *= BETA1
        m += (1.0 - BETA1) * grad
        v *= BETA2
        v += (1.0 - BETA2) * grad * grad
        weight -= lr * (m / correction1) / (np.sqrt(v / correction2) + EPSILON)
    return state


class Adam:
    """Envoltorio con estado para un store."""

    def __init__(self, store: ParamStore, lr: float) -> None:
        self.store = store
        self.lr = lr
        self.state = AdamState()

    def step(self) -> None:
        adam_step(self.store, self.state, self.lr)


def lr_schedule(run: TrainingRun, patience: int) -> float:
    """
    Tasa de aprendizaje para la próxima época.

    Recorre las pérdidas de validación registradas tomando la inicial como
    mejor valor; cada `patience` épocas consecutivas sin mejora estricta
    la tasa se divide a la mitad y el contador vuelve a cero. Una mejora
    también reinicia el contador.
    """
    lr = run.initial_lr
    best = run.initial_val_loss
    stalled = 0
    for loss in run.val_losses:
        if loss < best:
            best = loss
            stalled = 0
            continue
        stalled += 1
        if stalled >= patience:
            lr *= 0.5
            stalled = 0
    return lr
