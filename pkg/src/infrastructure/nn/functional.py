"""
Functional Kernels
==================

Kernels forward/backward sobre arreglos canales × tiempo (float64).

Cada operación tiene su función `*_backward` que recibe el gradiente de la
salida y devuelve los gradientes de entrada y parámetros. Las capas en
`layers.py` guardan lo necesario en su caché y llaman a estos kernels.

Convenciones:
- Convoluciones = correlación cruzada (como en los frameworks habituales)
- Relleno "same": pad_total = max((T_out − 1)·s + K − T, 0), izquierda pad_total // 2
- Taps fuera de rango leen cero (semántica FIR causal para la memoria)
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from src.domain.exceptions import ShapeError
from src.domain.value_objects import ActivationKind


def _check_channels(x: np.ndarray, expected: int, op: str) -> None:
    if x.ndim != 2 or x.shape[0] != expected:
        raise ShapeError(
            f"{op}: channel mismatch",
            details={"expected": expected, "got": int(x.shape[0]) if x.ndim == 2 else None},
        )


# ================================
# Pointwise
# ================================

def pointwise_conv(x: np.ndarray, W: np.ndarray, B: np.ndarray) -> np.ndarray:
    """out[c, t] = Σ_k W[c, k]·x[k, t] + B[c]."""
    _check_channels(x, W.shape[1], "pointwise_conv")
    return W @ x + B[:, None]


def pointwise_conv_backward(
    g: np.ndarray, x: np.ndarray, W: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Devuelve (grad_x, grad_W, grad_B)."""
    return W.T @ g, g @ x.T, g.sum(axis=1)


# ================================
# Depthwise dilatada (memoria)
# ================================

def dilated_depthwise_conv(
    x: np.ndarray, coeffs: np.ndarray, dilation: int, direction: str
) -> np.ndarray:
    """
    Filtro por canal con taps dilatados.

    history: out[c,t] = Σ_{i=0}^{K−1} coeffs[c,i]·x[c, t − d·i]
    future:  out[c,t] = Σ_{j=1}^{K}   coeffs[c,j−1]·x[c, t + d·j]
    """
    _check_channels(x, coeffs.shape[0], "dilated_depthwise_conv")
    if dilation < 1:
        raise ShapeError("dilation must be >= 1", details={"dilation": dilation})
    T = x.shape[1]
    out = np.zeros_like(x)
    K = coeffs.shape[1]
    if direction == "history":
        for i in range(K):
            shift = dilation * i
            if shift >= T:
                break
            out[:, shift:] += coeffs[:, i:i + 1] * x[:, :T - shift]
    elif direction == "future":
        for j in range(1, K + 1):
            shift = dilation * j
            if shift >= T:
                break
            out[:, :T - shift] += coeffs[:, j - 1:j] * x[:, shift:]
    else:
        raise ShapeError(f"unknown direction '{direction}'")
    return out


def dilated_depthwise_conv_backward(
    g: np.ndarray, x: np.ndarray, coeffs: np.ndarray, dilation: int, direction: str
) -> tuple[np.ndarray, np.ndarray]:
    """Devuelve (grad_x, grad_coeffs)."""
    T = x.shape[1]
    K = coeffs.shape[1]
    gx = np.zeros_like(x)
    gc = np.zeros_like(coeffs)
    if direction == "history":
        for i in range(K):
            shift = dilation * i
            if shift >= T:
                break
            gc[:, i] = np.sum(g[:, shift:] * x[:, :T - shift], axis=1)
            gx[:, :T - shift] += coeffs[:, i:i + 1] * g[:, shift:]
    else:
        for j in range(1, K + 1):
            shift = dilation * j
            if shift >= T:
                break
            gc[:, j - 1] = np.sum(g[:, :T - shift] * x[:, shift:], axis=1)
            gx[:, shift:] += coeffs[:, j - 1:j] * g[:, :T - shift]
    return gx, gc


# ================================
# Convolución con stride
# ================================

def same_padding(length: int, kernel: int, stride: int) -> tuple[int, int, int]:
    """Devuelve (T_out, pad_izquierdo, pad_derecho) para relleno 'same'."""
    t_out = -(-length // stride)
    pad_total = max((t_out - 1) * stride + kernel - length, 0)
    left = pad_total // 2
    return t_out, left, pad_total - left


def conv1d(x: np.ndarray, W: np.ndarray, B: np.ndarray | None, stride: int = 1) -> np.ndarray:
    """
    Convolución 1-D W: C_out × C_in × K con relleno 'same'.

    Salida de longitud ceil(T / stride).
    """
    _check_channels(x, W.shape[1], "conv1d")
    K = W.shape[2]
    t_out, left, right = same_padding(x.shape[1], K, stride)
    xp = np.pad(x, ((0, 0), (left, right)))
    windows = sliding_window_view(xp, K, axis=1)[:, ::stride][:, :t_out]
    out = np.einsum("oik,itk->ot", W, windows, optimize=True)
    if B is not None:
        out += B[:, None]
    return out


def conv1d_backward(
    g: np.ndarray, x: np.ndarray, W: np.ndarray, stride: int = 1
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Devuelve (grad_x, grad_W, grad_B)."""
    K = W.shape[2]
    T = x.shape[1]
    t_out, left, right = same_padding(T, K, stride)
    xp = np.pad(x, ((0, 0), (left, right)))
    windows = sliding_window_view(xp, K, axis=1)[:, ::stride][:, :t_out]
    gW = np.einsum("ot,itk->oik", g, windows, optimize=True)
    gwin = np.einsum("oik,ot->itk", W, g, optimize=True)
    gxp = np.zeros_like(xp)
    span = stride * (t_out - 1) + 1
    for k in range(K):
        gxp[:, k:k + span:stride] += gwin[:, :, k]
    return gxp[:, left:left + T], gW, g.sum(axis=1)


# ================================
# Convolución transpuesta
# ================================

def transposed_crop(kernel: int, stride: int) -> int:
    return (kernel - stride) // 2


def transposed_conv(
    x: np.ndarray, W: np.ndarray, B: np.ndarray | None, stride: int
) -> np.ndarray:
    """
    Convolución fraccionaria W: C_in × C_out × K.

    Equivale a insertar (stride − 1) ceros entre muestras y convolucionar;
    la salida completa ((T − 1)·s + K) se recorta a T·s empezando en (K − s) // 2.
    """
    _check_channels(x, W.shape[0], "transposed_conv")
    C_out, K = W.shape[1], W.shape[2]
    if K < stride:
        raise ShapeError("transposed_conv requires K >= stride", details={"K": K, "stride": stride})
    T = x.shape[1]
    z = np.einsum("iok,it->okt", W, x, optimize=True)
    full = np.zeros((C_out, (T - 1) * stride + K))
    span = stride * (T - 1) + 1
    for k in range(K):
        full[:, k:k + span:stride] += z[:, k, :]
    crop = transposed_crop(K, stride)
    out = full[:, crop:crop + T * stride]
    if B is not None:
        out = out + B[:, None]
    return out


def transposed_conv_backward(
    g: np.ndarray, x: np.ndarray, W: np.ndarray, stride: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Devuelve (grad_x, grad_W, grad_B)."""
    C_out, K = W.shape[1], W.shape[2]
    T = x.shape[1]
    crop = transposed_crop(K, stride)
    gfull = np.zeros((C_out, (T - 1) * stride + K))
    gfull[:, crop:crop + T * stride] = g
    span = stride * (T - 1) + 1
    gz = np.stack([gfull[:, k:k + span:stride] for k in range(K)], axis=1)
    gW = np.einsum("okt,it->iok", gz, x, optimize=True)
    gx = np.einsum("iok,okt->it", W, gz, optimize=True)
    return gx, gW, g.sum(axis=1)


# ================================
# Pixel shuffle 1-D
# ================================

def pixel_shuffle_1d(z: np.ndarray, upscale: int) -> np.ndarray:
    """(C·r) × T -> C × (T·r) con out[c, t·r + j] = z[c·r + j, t]."""
    channels, T = z.shape
    if channels % upscale != 0:
        raise ShapeError(
            "subpixel channels must be divisible by the upscale factor",
            details={"channels": channels, "upscale": upscale},
        )
    C = channels // upscale
    return z.reshape(C, upscale, T).transpose(0, 2, 1).reshape(C, T * upscale)


def pixel_unshuffle_1d(y: np.ndarray, upscale: int) -> np.ndarray:
    """Inversa exacta de pixel_shuffle_1d."""
    C, length = y.shape
    T = length // upscale
    return y.reshape(C, T, upscale).transpose(0, 2, 1).reshape(C * upscale, T)


# ================================
# Nearest
# ================================

def nearest_upsample(x: np.ndarray, factor: int) -> np.ndarray:
    """Repite cada muestra `factor` veces."""
    if factor < 1:
        raise ShapeError("factor must be >= 1", details={"factor": factor})
    return np.repeat(x, factor, axis=1)


def nearest_upsample_backward(g: np.ndarray, factor: int) -> np.ndarray:
    C, length = g.shape
    return g.reshape(C, length // factor, factor).sum(axis=2)


# ================================
# Activaciones
# ================================

def activation(x: np.ndarray, kind: ActivationKind) -> np.ndarray:
    if kind is ActivationKind.TANH:
        return np.tanh(x)
    if kind is ActivationKind.SIGMOID:
        return expit(x)
    if kind is ActivationKind.RELU:
        return np.maximum(x, 0.0)
    return x


def activation_backward(g: np.ndarray, x: np.ndarray, y: np.ndarray, kind: ActivationKind) -> np.ndarray:
    """Gradiente de la activación; ReLU usa subgradiente 0 en 0."""
    if kind is ActivationKind.TANH:
        return g * (1.0 - y * y)
    if kind is ActivationKind.SIGMOID:
        return g * y * (1.0 - y)
    if kind is ActivationKind.RELU:
        return g * (x > 0.0)
    return g
