"""
Gradient Check
==============

Comparación de gradientes analíticos contra diferencias centrales.

La pérdida escalar es L = Σ (salida ⊙ R) con R una proyección aleatoria
fija; su gradiente respecto de la salida es exactamente R.
"""

from collections.abc import Callable

import numpy as np

from src.infrastructure.nn.layers import Layer
from src.infrastructure.nn.models import Module

DEFAULT_STEP = 1e-4
# Diferencias absolutas por debajo de esto son ruido de redondeo.
_ABS_TOL = 1e-8


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """Máximo de |a − n| / (|a| + |n|), ignorando diferencias de redondeo."""
    if analytic.size == 0:
        return 0.0
    diff = np.abs(analytic - numeric)
    denom = np.maximum(np.abs(analytic) + np.abs(numeric), 1e-6)
    err = np.where(diff < _ABS_TOL, 0.0, diff / denom)
    return float(np.max(err))


def _as_list(out: np.ndarray | list[np.ndarray]) -> list[np.ndarray]:
    return out if isinstance(out, list) else [out]


def _pick(rng: np.random.Generator, size: int, limit: int) -> np.ndarray:
    if size <= limit:
        return np.arange(size)
    return np.sort(rng.choice(size, size=limit, replace=False))


def central_difference(
    loss: Callable[[], float], flat: np.ndarray, picks: np.ndarray, step: float
) -> np.ndarray:
    """Derivadas numéricas de `loss` respecto de `flat[picks]` (modifica en sitio y restaura)."""
    numeric = np.zeros(len(picks))
    for n, idx in enumerate(picks):
        saved = flat[idx]
        flat[idx] = saved + step
        up = loss()
        flat[idx] = saved - step
        down = loss()
        flat[idx] = saved
        numeric[n] = (up - down) / (2.0 * step)
    return numeric


def gradient_check(
    unit: Layer | Module,
    input_shape: tuple[int, int],
    seed: int = 0,
    step: float = DEFAULT_STEP,
    max_entries: int = 64,
    forward: Callable[[np.ndarray], np.ndarray | list[np.ndarray]] | None = None,
) -> float:
    """
    Error relativo máximo entre gradientes analíticos y numéricos.

    Se verifican el gradiente de la entrada y el de todos los parámetros
    (hasta `max_entries` entradas por arreglo, elegidas con la semilla).

    Args:
        unit: Capa o modelo con forward/backward
        input_shape: (canales, tiempo)
        seed: Semilla de entrada, proyección y muestreo de entradas
        step: Paso de diferencias centrales (64 bits)
        forward: Forward alternativo; por defecto unit.forward
    """
    rng = np.random.default_rng(seed)
    run = forward or unit.forward
    x = rng.standard_normal(input_shape)
    first = run(x)
    is_list = isinstance(first, list)
    projections = [rng.standard_normal(o.shape) for o in _as_list(first)]

    def loss() -> float:
        outs = _as_list(run(x))
        return float(sum(np.sum(o * r) for o, r in zip(outs, projections, strict=True)))

    unit.store.zero_grad()
    run(x)
    gx = unit.backward(projections if is_list else projections[0])

    flat_x = x.reshape(-1)
    picks = _pick(rng, flat_x.size, max_entries)
    worst = relative_error(gx.reshape(-1)[picks], central_difference(loss, flat_x, picks, step))

    for _, weight, grad in unit.store.items():
        flat_w = weight.reshape(-1)
        picks = _pick(rng, flat_w.size, max_entries)
        numeric = central_difference(loss, flat_w, picks, step)
        worst = max(worst, relative_error(grad.reshape(-1)[picks], numeric))
    return worst
