"""
Losses
======

Pérdidas con gradiente analítico respecto de la predicción.

- mae_loss: media de |pred − target|
- ha_loss: α·MSE(r, r̂) + β·MSE(p, p̂), con p y p̂ sumas sobre CF
"""

import numpy as np

from src.domain.exceptions import ShapeError

DEFAULT_ALPHA = 30.0
DEFAULT_BETA = 1.0


def _check_aligned(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(
            "prediction and target shapes differ",
            details={"prediction": list(a.shape), "target": list(b.shape)},
        )


def mae_loss(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """
    Error absoluto medio y su gradiente respecto de `pred`.

    El subgradiente en pred == target es 0.
    """
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    _check_aligned(pred, target)
    diff = pred - target
    return float(np.mean(np.abs(diff))), np.sign(diff) / diff.size


def mae_loss_multi(
    preds: list[np.ndarray], targets: list[np.ndarray]
) -> tuple[float, list[np.ndarray]]:
    """MAE sobre la concatenación de varias salidas (p.ej. las tres fibras)."""
    if len(preds) != len(targets):
        raise ShapeError("output count mismatch",
                         details={"prediction": len(preds), "target": len(targets)})
    total = sum(np.asarray(p).size for p in preds)
    value = 0.0
    grads: list[np.ndarray] = []
    for pred, target in zip(preds, targets, strict=True):
        _check_aligned(pred, target)
        diff = pred - target
        value += float(np.sum(np.abs(diff)))
        grads.append(np.sign(diff) / total)
    return value / total, grads


def ha_loss(
    r: np.ndarray,
    r_hat: np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
) -> tuple[float, np.ndarray]:
    """
    Pérdida combinada de respuesta AN y de población.

    Args:
        r: Respuesta de referencia N_CF × T (camino NH)
        r_hat: Respuesta del camino HI sobre la señal procesada

    Returns:
        (valor, gradiente respecto de r_hat)
    """
    r = np.atleast_2d(np.asarray(r, dtype=np.float64))
    r_hat = np.atleast_2d(np.asarray(r_hat, dtype=np.float64))
    _check_aligned(r_hat, r)
    diff = r_hat - r
    p_diff = diff.sum(axis=0)
    value = alpha * float(np.mean(diff ** 2)) + beta * float(np.mean(p_diff ** 2))
    grad = (2.0 * alpha / diff.size) * diff + (2.0 * beta / p_diff.size) * p_diff[None, :]
    return value, grad
