"""
Layers
======

Capas con parámetros, caché de forward y backward manual.

Cada capa:
- Registra sus pesos en un ParamStore propio (ranuras de gradiente incluidas)
- Guarda en `_cache` lo necesario para el backward del ÚLTIMO forward
- Acumula gradientes de parámetros (+=) salvo que su almacén esté congelado
- Devuelve siempre el gradiente respecto de su entrada

Los lotes se procesan muestra a muestra (forward seguido de backward), lo
que mantiene la acumulación de gradientes en orden fijo por índice.
"""

from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from src.domain.entities import ParamStore
from src.domain.value_objects import ActivationKind
from src.infrastructure.dsp import fir_filter
from src.infrastructure.nn import functional as F


def uniform_init(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int) -> np.ndarray:
    """Pesos uniformes en ±1/√fan_in."""
    bound = 1.0 / np.sqrt(max(fan_in, 1))
    return rng.uniform(-bound, bound, size=shape)


class Layer(ABC):
    """Capa base con almacén de parámetros."""

    def __init__(self) -> None:
        self.store = ParamStore()
        self._cache: Any = None

    def _register(self, name: str, weight: np.ndarray) -> np.ndarray:
        self.store.register(name, weight)
        return weight

    def _accumulate(self, name: str, grad: np.ndarray) -> None:
        if not self.store.frozen:
            self.store.grads[name] += grad

    def freeze(self) -> None:
        self.store.freeze()

    def unfreeze(self) -> None:
        self.store.unfreeze()

    @abstractmethod
    def forward(self, x: np.ndarray) -> np.ndarray:
        """Forward sobre un arreglo canales × tiempo."""

    @abstractmethod
    def backward(self, g: np.ndarray) -> np.ndarray:
        """Gradiente respecto de la entrada del último forward."""

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)


# ================================
# Capas puntuales y activaciones
# ================================

class PointwiseConv(Layer):
    """Convolución 1×1: W (C_out × C_in), B (C_out)."""

    def __init__(self, c_in: int, c_out: int, rng: np.random.Generator) -> None:
        super().__init__()
        self.W = self._register("W", uniform_init(rng, (c_out, c_in), c_in))
        self.B = self._register("B", np.zeros(c_out))

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x
        return F.pointwise_conv(x, self.W, self.B)

    def backward(self, g: np.ndarray) -> np.ndarray:
        gx, gW, gB = F.pointwise_conv_backward(g, self._cache, self.W)
        self._accumulate("W", gW)
        self._accumulate("B", gB)
        return gx


class Activation(Layer):
    """Activación elemento a elemento (sin parámetros)."""

    def __init__(self, kind: ActivationKind | str) -> None:
        super().__init__()
        self.kind = ActivationKind(kind)

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = F.activation(x, self.kind)
        self._cache = (x, y)
        return y

    def backward(self, g: np.ndarray) -> np.ndarray:
        x, y = self._cache
        return F.activation_backward(g, x, y, self.kind)


# ================================
# Bloque de memoria
# ================================

class MemoryBlock(Layer):
    """
    Bloque de memoria FIR con taps dilatados.

    Y = W·h + B
    Ỹ = Y + Σ_{i<K1} a_i ⊙ Y_{t−d·i} + Σ_{j=1..K2} b_j ⊙ Y_{t+d·j}
    salida = V·f(Ỹ) + U

    Formas: W (P × H), B (P), a (P × K1), b (P × K2), V (H × P), U (H).
    """

    def __init__(
        self,
        hidden: int,
        width: int,
        history_taps: int,
        future_taps: int,
        dilation: int,
        act: ActivationKind,
        rng: np.random.Generator,
    ) -> None:
        super().__init__()
        self.dilation = dilation
        self.W = self._register("W", uniform_init(rng, (width, hidden), hidden))
        self.B = self._register("B", np.zeros(width))
        self.a = self._register("a", uniform_init(rng, (width, history_taps), history_taps))
        self.b = self._register("b", uniform_init(rng, (width, future_taps), max(future_taps, 1)))
        self.V = self._register("V", uniform_init(rng, (hidden, width), width))
        self.U = self._register("U", np.zeros(hidden))
        self.act = Activation(act)

    @property
    def history_taps(self) -> int:
        return int(self.a.shape[1])

    @property
    def future_taps(self) -> int:
        return int(self.b.shape[1])

    def forward(self, h: np.ndarray) -> np.ndarray:
        Y = F.pointwise_conv(h, self.W, self.B)
        Yt = Y + F.dilated_depthwise_conv(Y, self.a, self.dilation, "history")
        if self.future_taps:
            Yt = Yt + F.dilated_depthwise_conv(Y, self.b, self.dilation, "future")
        Z = self.act.forward(Yt)
        self._cache = (h, Y, Z)
        return F.pointwise_conv(Z, self.V, self.U)

    def backward(self, g: np.ndarray) -> np.ndarray:
        h, Y, Z = self._cache
        gZ, gV, gU = F.pointwise_conv_backward(g, Z, self.V)
        gYt = self.act.backward(gZ)
        gY_hist, ga = F.dilated_depthwise_conv_backward(gYt, Y, self.a, self.dilation, "history")
        gY = gYt + gY_hist
        if self.future_taps:
            gY_fut, gb = F.dilated_depthwise_conv_backward(gYt, Y, self.b, self.dilation, "future")
            gY = gY + gY_fut
            self._accumulate("b", gb)
        gh, gW, gB = F.pointwise_conv_backward(gY, h, self.W)
        self._accumulate("V", gV)
        self._accumulate("U", gU)
        self._accumulate("a", ga)
        self._accumulate("W", gW)
        self._accumulate("B", gB)
        return gh


def memory_block_forward(
    Y: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    V: np.ndarray,
    U: np.ndarray,
    dilation: int,
    act: ActivationKind = ActivationKind.LINEAR,
) -> np.ndarray:
    """
    Memoria sobre una entrada ya proyectada: V·f(Ỹ) + U.

    Forma funcional del bloque (sin la proyección W, B de entrada).
    """
    Yt = Y + F.dilated_depthwise_conv(Y, a, dilation, "history")
    if b.shape[1]:
        Yt = Yt + F.dilated_depthwise_conv(Y, b, dilation, "future")
    return F.pointwise_conv(F.activation(Yt, ActivationKind(act)), V, U)


# ================================
# Convoluciones con stride / upsampling
# ================================

class Conv1d(Layer):
    """
    Convolución 1-D con relleno 'same' y stride opcional.

    Con `prefilter`, cada canal se filtra con el FIR (fase lineal, simétrico)
    antes de la convolución.
    """

    def __init__(
        self,
        c_in: int,
        c_out: int,
        kernel: int,
        rng: np.random.Generator,
        stride: int = 1,
        prefilter: np.ndarray | None = None,
        bias: bool = True,
    ) -> None:
        super().__init__()
        self.stride = stride
        self.prefilter = prefilter
        self.W = self._register("W", uniform_init(rng, (c_out, c_in, kernel), c_in * kernel))
        self.B = self._register("B", np.zeros(c_out)) if bias else None

    def forward(self, x: np.ndarray) -> np.ndarray:
        if self.prefilter is not None:
            x = fir_filter(x, self.prefilter)
        self._cache = x
        return F.conv1d(x, self.W, self.B, self.stride)

    def backward(self, g: np.ndarray) -> np.ndarray:
        gx, gW, gB = F.conv1d_backward(g, self._cache, self.W, self.stride)
        self._accumulate("W", gW)
        if self.B is not None:
            self._accumulate("B", gB)
        if self.prefilter is not None:
            gx = fir_filter(gx, self.prefilter)
        return gx


class TransposedConv1d(Layer):
    """Convolución transpuesta W (C_in × C_out × K) con stride."""

    def __init__(
        self, c_in: int, c_out: int, kernel: int, stride: int, rng: np.random.Generator
    ) -> None:
        super().__init__()
        self.stride = stride
        self.W = self._register("W", uniform_init(rng, (c_in, c_out, kernel), c_in * kernel))
        self.B = self._register("B", np.zeros(c_out))

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x
        return F.transposed_conv(x, self.W, self.B, self.stride)

    def backward(self, g: np.ndarray) -> np.ndarray:
        gx, gW, gB = F.transposed_conv_backward(g, self._cache, self.W, self.stride)
        self._accumulate("W", gW)
        self._accumulate("B", gB)
        return gx


class SubpixelConv1d(Layer):
    """Convolución stride 1 a C_out·r canales seguida de pixel shuffle 1-D."""

    def __init__(
        self, c_in: int, c_out: int, kernel: int, upscale: int, rng: np.random.Generator
    ) -> None:
        super().__init__()
        self.upscale = upscale
        self.W = self._register(
            "W", uniform_init(rng, (c_out * upscale, c_in, kernel), c_in * kernel)
        )
        self.B = self._register("B", np.zeros(c_out * upscale))

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._cache = x
        return F.pixel_shuffle_1d(F.conv1d(x, self.W, self.B), self.upscale)

    def backward(self, g: np.ndarray) -> np.ndarray:
        gz = F.pixel_unshuffle_1d(g, self.upscale)
        gx, gW, gB = F.conv1d_backward(gz, self._cache, self.W)
        self._accumulate("W", gW)
        self._accumulate("B", gB)
        return gx


class NearestUpsample(Layer):
    """Repetición de muestras (sin parámetros)."""

    def __init__(self, factor: int) -> None:
        super().__init__()
        self.factor = factor

    def forward(self, x: np.ndarray) -> np.ndarray:
        return F.nearest_upsample(x, self.factor)

    def backward(self, g: np.ndarray) -> np.ndarray:
        return F.nearest_upsample_backward(g, self.factor)
