"""
Models
======

Composición de capas en modelos completos:

- DCoNNear: proyección de entrada, N = M·R bloques de memoria con conexión
  residual, suma ponderada de salidas (escalar por bloque), activación,
  cabezal puntual y recorte de contexto
- ThreeBranchANF: tronco dCoNNear compartido y tres ramas (HSR, MSR, LSR)
- AutoencoderBaseline: codificador con stride 2 y decodificador con
  upsampling transpuesto, subpixel o nearest
- Sequential: pila genérica de capas (sondas de aliasing/imagen)

Todos los modelos comparten la interfaz Module: forward/backward sobre
arreglos canales × tiempo, un ParamStore agregado y congelamiento.
"""

from collections.abc import Iterator
from typing import Any

import numpy as np

from src.domain.entities import ParamStore
from src.domain.exceptions import ShapeError
from src.domain.value_objects import ActivationKind, ModelSpec, UpsamplingMode
from src.infrastructure.dsp import ANTIALIAS_CUTOFF, design_lowpass
from src.infrastructure.nn.layers import (
    Activation,
    Conv1d,
    Layer,
    MemoryBlock,
    NearestUpsample,
    PointwiseConv,
    SubpixelConv1d,
    TransposedConv1d,
)


class Module:
    """
    Modelo compuesto.

    Atributos:
        arch: Nombre de arquitectura (para checkpoints)
        store: ParamStore agregado que comparte los arreglos de las capas
    """

    arch = "module"

    def __init__(self) -> None:
        self.store = ParamStore()
        self._layers: list[tuple[str, Layer]] = []

    def _add(self, name: str, layer: Layer) -> Layer:
        self._layers.append((name, layer))
        self.store.merge(f"{name}.", layer.store)
        return layer

    def layers(self) -> Iterator[tuple[str, Layer]]:
        """Itera capas (incluidas las activaciones internas de los bloques)."""
        for name, layer in self._layers:
            yield name, layer
            if isinstance(layer, MemoryBlock):
                yield f"{name}.act", layer.act

    @property
    def param_count(self) -> int:
        return self.store.count

    @property
    def frozen(self) -> bool:
        return self.store.frozen

    def freeze(self) -> None:
        """Congela todos los parámetros: el backward sólo propaga a la entrada."""
        self.store.freeze()
        for _, layer in self._layers:
            layer.freeze()

    def unfreeze(self) -> None:
        self.store.unfreeze()
        for _, layer in self._layers:
            layer.unfreeze()

    def spec_dict(self) -> dict[str, str]:
        """Pares clave-valor que reconstruyen el modelo."""
        return {}

    def forward(self, x: np.ndarray) -> Any:
        raise NotImplementedError

    def backward(self, g: Any) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: np.ndarray) -> Any:
        return self.forward(x)


def _check_input(x: np.ndarray, channels: int, min_length: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[0] != channels:
        raise ShapeError(
            "input channel mismatch",
            details={"expected": channels, "got": int(x.shape[0])},
        )
    if x.shape[1] < min_length:
        raise ShapeError(
            "input shorter than the model context",
            details={"min_length": min_length, "got": int(x.shape[1])},
        )
    return x


# ================================
# dCoNNear
# ================================

class _BlockStack:
    """Pila residual de bloques de memoria con suma ponderada de salidas."""

    def __init__(self, owner: Module, prefix: str, spec: ModelSpec, first_block: int,
                 rng: np.random.Generator) -> None:
        self.blocks: list[MemoryBlock] = []
        for i in range(spec.n_blocks):
            block = MemoryBlock(
                hidden=spec.hidden,
                width=spec.width,
                history_taps=spec.history_taps,
                future_taps=spec.future_taps,
                dilation=spec.dilation(first_block + i),
                act=spec.act_hidden,
                rng=rng,
            )
            owner._add(f"{prefix}block{i}", block)
            self.blocks.append(block)
        self._states: list[np.ndarray] = []

    def forward(self, h: np.ndarray) -> np.ndarray:
        self._states = []
        for block in self.blocks:
            h = h + block.forward(h)
            self._states.append(h)
        return h

    @property
    def states(self) -> list[np.ndarray]:
        """Estado residual tras cada bloque (h_1 … h_N)."""
        return self._states

    def backward(self, g_states: list[np.ndarray], g_last: np.ndarray) -> np.ndarray:
        """
        Backward de la pila.

        Args:
            g_states: Gradiente directo sobre cada estado h_{l+1} (vía suma ponderada)
            g_last: Gradiente adicional sobre el último estado (p.ej. ramas siguientes)
        """
        gh = g_last
        for block, g_skip in zip(reversed(self.blocks), reversed(g_states), strict=True):
            gh = gh + g_skip
            gh = gh + block.backward(gh)
        return gh


class _Head:
    """
    Suma ponderada → act_out → puntual → act_final.

    Cada peso escalar multiplica la salida del bloque residual l, es decir
    h_{l+1} = h_l + bloque(h_l). Con todos los bloques en cero la suma vale
    (Σ skip)·h_0 y el modelo se reduce al cabezal sobre la proyección.
    """

    def __init__(self, owner: Module, prefix: str, spec: ModelSpec, n_states: int,
                 rng: np.random.Generator) -> None:
        self._owner = owner
        self._prefix = prefix
        self.skip = np.full(n_states, 1.0 / n_states)
        self.skip_grad = owner.store.register(f"{prefix}skip", self.skip)
        self.act_out = Activation(spec.act_out)
        self.head = PointwiseConv(spec.hidden, spec.c_out, rng)
        self.act_final = Activation(spec.act_final)
        owner._add(f"{prefix}act_out", self.act_out)
        owner._add(f"{prefix}head", self.head)
        owner._add(f"{prefix}act_final", self.act_final)
        self._states: list[np.ndarray] = []

    def forward(self, states: list[np.ndarray]) -> np.ndarray:
        self._states = states
        s = np.zeros_like(states[0])
        for w, h in zip(self.skip, states, strict=True):
            s += w * h
        return self.act_final.forward(self.head.forward(self.act_out.forward(s)))

    def backward(self, g: np.ndarray) -> list[np.ndarray]:
        gs = self.act_out.backward(self.head.backward(self.act_final.backward(g)))
        if not self._owner.store.frozen:
            for i, h in enumerate(self._states):
                self.skip_grad[i] += float(np.sum(gs * h))
        return [w * gs for w in self.skip]


def _untrim(g: np.ndarray, spec: ModelSpec, length: int, trim: bool) -> np.ndarray:
    if not trim or spec.trim == 0:
        return g
    full = np.zeros((g.shape[0], length))
    full[:, spec.left_context:length - spec.right_context] = g
    return full


def _trim(y: np.ndarray, spec: ModelSpec, trim: bool) -> np.ndarray:
    if not trim or spec.trim == 0:
        return y
    return y[:, spec.left_context:y.shape[1] - spec.right_context]


class DCoNNear(Module):
    """
    Modelo dCoNNear.

    Ejemplo:
        >>> model = DCoNNear(ModelSpec(blocks_per_repeat=2, history_taps=3), seed=0)
        >>> y = model.forward(np.zeros((1, 64)))
    """

    arch = "dconnear"

    def __init__(self, spec: ModelSpec, seed: int = 0) -> None:
        super().__init__()
        self.spec = spec
        rng = np.random.default_rng(seed)
        self.input = self._add("input", PointwiseConv(spec.c_in, spec.hidden, rng))
        self.stack = _BlockStack(self, "", spec, 0, rng)
        self.output = _Head(self, "", spec, spec.n_blocks, rng)
        if spec.passthrough:
            # Cabezal en cero: el modelo inicial es exactamente la identidad.
            self.output.head.W[...] = 0.0
        self._length = 0
        self._trim = True

    @property
    def blocks(self) -> list[MemoryBlock]:
        return self.stack.blocks

    def spec_dict(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.spec.to_dict().items()}

    def forward(self, x: np.ndarray, trim: bool = True) -> np.ndarray:
        """
        Forward completo.

        Args:
            x: Entrada C_in × T (o 1-D si C_in == 1)
            trim: Recorta L_l muestras iniciales y L_r finales
        """
        min_length = self.spec.trim + 1 if trim else 1
        x = _check_input(x, self.spec.c_in, min_length)
        self._length = x.shape[1]
        self._trim = trim
        self.stack.forward(self.input.forward(x))
        y = self.output.forward(self.stack.states)
        if self.spec.passthrough:
            y = y + x
        return _trim(y, self.spec, trim)

    def backward(self, g: np.ndarray) -> np.ndarray:
        gfull = _untrim(g, self.spec, self._length, self._trim)
        g_states = self.output.backward(gfull)
        gh = self.stack.backward(g_states, np.zeros_like(g_states[0]))
        gx = self.input.backward(gh)
        if self.spec.passthrough:
            gx = gx + gfull
        return gx


class ThreeBranchANF(Module):
    """
    Modelo ANF de tres ramas.

    Un tronco (proyección + bloques del spec compartido) alimenta tres ramas
    independientes (HSR, MSR, LSR); cada rama continúa el flujo residual con
    sus propios bloques, su suma ponderada y su cabezal con ReLU final.
    Las dilataciones de las ramas continúan el ciclo del tronco.
    """

    arch = "anf3"
    BRANCHES = ("hsr", "msr", "lsr")

    def __init__(self, shared_spec: ModelSpec, branch_spec: ModelSpec, seed: int = 0) -> None:
        super().__init__()
        if branch_spec.hidden != shared_spec.hidden:
            raise ShapeError(
                "branch hidden width must match the shared trunk",
                details={"shared": shared_spec.hidden, "branch": branch_spec.hidden},
            )
        self.shared_spec = shared_spec
        self.branch_spec = branch_spec
        rng = np.random.default_rng(seed)
        self.input = self._add("input", PointwiseConv(shared_spec.c_in, shared_spec.hidden, rng))
        self.trunk = _BlockStack(self, "trunk.", shared_spec, 0, rng)
        self.branches: list[tuple[_BlockStack, _Head]] = []
        for name in self.BRANCHES:
            stack = _BlockStack(self, f"{name}.", branch_spec, shared_spec.n_blocks, rng)
            head = _Head(self, f"{name}.", branch_spec, branch_spec.n_blocks, rng)
            self.branches.append((stack, head))
        self._length = 0
        self._trim = True

    def spec_dict(self) -> dict[str, str]:
        data = {f"shared.{k}": str(v) for k, v in self.shared_spec.to_dict().items()}
        data.update({f"branch.{k}": str(v) for k, v in self.branch_spec.to_dict().items()})
        return data

    def forward(self, x: np.ndarray, trim: bool = True) -> list[np.ndarray]:
        """Devuelve [hsr, msr, lsr], cada uno C_out × T'."""
        spec = self.shared_spec
        x = _check_input(x, spec.c_in, spec.trim + 1 if trim else 1)
        self._length = x.shape[1]
        self._trim = trim
        h = self.trunk.forward(self.input.forward(x))
        outputs = []
        for stack, head in self.branches:
            stack.forward(h)
            outputs.append(_trim(head.forward(stack.states), spec, trim))
        return outputs

    def backward(self, g: list[np.ndarray]) -> np.ndarray:
        gh_trunk = None
        for (stack, head), g_branch in zip(self.branches, g, strict=True):
            g_states = head.backward(_untrim(g_branch, self.shared_spec, self._length, self._trim))
            gh = stack.backward(g_states, np.zeros_like(g_states[0]))
            gh_trunk = gh if gh_trunk is None else gh_trunk + gh
        assert gh_trunk is not None
        trunk_states = self.trunk.states
        gx = self.trunk.backward([np.zeros_like(s) for s in trunk_states], gh_trunk)
        return self.input.backward(gx)


# ================================
# Pilas secuenciales y autoencoder
# ================================

class Sequential(Module):
    """Pila lineal de capas."""

    arch = "sequential"

    def __init__(self, layers: list[tuple[str, Layer]] | None = None) -> None:
        super().__init__()
        for name, layer in layers or []:
            self._add(name, layer)

    def append(self, name: str, layer: Layer) -> Layer:
        return self._add(name, layer)

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x[None, :]
        for _, layer in self._layers:
            x = layer.forward(x)
        return x

    def backward(self, g: np.ndarray) -> np.ndarray:
        for _, layer in reversed(self._layers):
            g = layer.backward(g)
        return g


class AutoencoderBaseline(Sequential):
    """
    Autoencoder convolucional de referencia.

    Codificador: `depth` convoluciones stride 2 (kernel 16) con canales
    base·2^i; con antialias, cada una precedida por un pasa-bajos de corte
    0.5. Decodificador: `depth` etapas de upsampling ×2 del tipo elegido.
    La activación se aplica entre etapas; la última etapa es lineal.
    """

    arch = "autoencoder"

    def __init__(
        self,
        depth: int,
        upsampling: UpsamplingMode | str,
        antialias: bool = False,
        seed: int = 0,
        c_in: int = 1,
        c_out: int = 1,
        base_channels: int = 16,
        kernel: int = 16,
        activation: ActivationKind | str = ActivationKind.TANH,
    ) -> None:
        super().__init__()
        if depth < 1:
            raise ShapeError("depth must be >= 1", details={"depth": depth})
        self.depth = depth
        self.upsampling = UpsamplingMode(upsampling)
        self.antialias = antialias
        self.c_in, self.c_out = c_in, c_out
        self.base_channels, self.kernel = base_channels, kernel
        self.activation = ActivationKind(activation)
        rng = np.random.default_rng(seed)
        prefilter = design_lowpass(ANTIALIAS_CUTOFF) if antialias else None

        channels = [c_in] + [base_channels * 2 ** i for i in range(depth)]
        for i in range(depth):
            self.append(f"enc{i}", Conv1d(channels[i], channels[i + 1], kernel, rng,
                                          stride=2, prefilter=prefilter))
            self.append(f"enc{i}.act", Activation(self.activation))

        self.decoder_start = len(self._layers)
        dec_channels = channels[::-1][:-1] + [c_out]
        for i in range(depth):
            c_a, c_b = dec_channels[i], dec_channels[i + 1]
            if self.upsampling is UpsamplingMode.TRANSPOSED:
                self.append(f"dec{i}", TransposedConv1d(c_a, c_b, kernel, 2, rng))
            elif self.upsampling is UpsamplingMode.SUBPIXEL:
                self.append(f"dec{i}", SubpixelConv1d(c_a, c_b, kernel, 2, rng))
            else:
                self.append(f"dec{i}.up", NearestUpsample(2))
                self.append(f"dec{i}", Conv1d(c_a, c_b, kernel, rng))
            if i < depth - 1:
                self.append(f"dec{i}.act", Activation(self.activation))

    @property
    def decoder(self) -> Sequential:
        """Sub-pila del decodificador (comparte las capas)."""
        return Sequential(self._layers[self.decoder_start:])

    @property
    def encoder(self) -> Sequential:
        return Sequential(self._layers[:self.decoder_start])

    def spec_dict(self) -> dict[str, str]:
        return {
            "depth": str(self.depth),
            "upsampling": self.upsampling.value,
            "antialias": str(self.antialias).lower(),
            "c_in": str(self.c_in),
            "c_out": str(self.c_out),
            "base_channels": str(self.base_channels),
            "kernel": str(self.kernel),
            "activation": self.activation.value,
        }

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        length = x.shape[-1]
        if length % (2 ** self.depth):
            raise ShapeError(
                "input length must be divisible by 2^depth",
                details={"length": int(length), "depth": self.depth},
            )
        return super().forward(x)


# ================================
# Factories
# ================================

def build_dconnear(spec: ModelSpec, seed: int = 0) -> DCoNNear:
    """Construye un dCoNNear (el spec ya se validó al crearse)."""
    return DCoNNear(spec, seed)


def build_anf_threebranch(shared_spec: ModelSpec, branch_spec: ModelSpec, seed: int = 0) -> ThreeBranchANF:
    return ThreeBranchANF(shared_spec, branch_spec, seed)


def build_autoencoder_baseline(
    depth: int,
    upsampling: UpsamplingMode | str,
    antialias: bool = False,
    seed: int = 0,
    **kwargs: Any,
) -> AutoencoderBaseline:
    return AutoencoderBaseline(depth, upsampling, antialias, seed, **kwargs)


def build_strided_stack(depth: int, antialias: bool = False) -> Sequential:
    """
    Pila de `depth` decimaciones ×2 con pesos identidad (kernel 1).

    Con antialias, cada etapa filtra con el pasa-bajos de corte 0.5 antes
    de decimar.
    """
    rng = np.random.default_rng(0)
    prefilter = design_lowpass(ANTIALIAS_CUTOFF) if antialias else None
    stack = Sequential()
    for i in range(depth):
        conv = Conv1d(1, 1, 1, rng, stride=2, prefilter=prefilter, bias=False)
        conv.W[...] = 1.0
        stack.append(f"down{i}", conv)
    return stack
