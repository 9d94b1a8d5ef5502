"""
Trainers
========

Arneses de entrenamiento:

- train_emulator: un modelo aprende una etapa sustituta (o la identidad)
  minimizando MAE sobre frames segmentados, con las escalas de objetivo
  de cada etapa
- train_ha_closed_loop: un procesador HA aprende a que el camino HI sobre
  la señal procesada reproduzca el camino NH sobre la señal original
- train_se_closed_loop: un procesador SE aprende a que el camino NH sobre
  la señal ruidosa procesada reproduzca el camino NH sobre la limpia

Los caminos auditivos deben estar congelados; sus huellas se verifican
antes y después del entrenamiento.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from src.domain.entities import ParamStore, TrainingRun
from src.domain.exceptions import ConfigurationError, InvalidSignalError
from src.domain.interfaces import IAuditoryPathway
from src.domain.value_objects import AudioBuffer, CFGrid, HearingProfile, TrainConfig
from src.infrastructure.auditory import (
    ANF_SCALE,
    BM_SCALE,
    IHC_SCALE,
    CochleaSurrogate,
    HairCellSurrogate,
    NerveSurrogate,
)
from src.infrastructure.dsp import segment
from src.infrastructure.nn import Module
from src.infrastructure.training.losses import ha_loss, mae_loss, mae_loss_multi
from src.infrastructure.training.optim import AdamState, adam_step, lr_schedule

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 256
EMULATION_STAGES = ("identity", "cochlea", "ihc", "anf")

Target = np.ndarray | list[np.ndarray]


# ================================
# Objetivos de emulación
# ================================

class StageTarget:
    """
    Objetivo de una etapa: audio → (entrada del emulador, objetivo escalado).

    - identity: (audio, audio)
    - cochlea: (audio, BM·1e6)
    - ihc: (BM·1e6, IHC·10)
    - anf: (IHC·10, [HSR, MSR, LSR]·0.01)
    """

    def __init__(self, stage: str, grid: CFGrid, profile: HearingProfile,
                 sample_rate: float = 20000.0) -> None:
        if stage not in EMULATION_STAGES:
            raise ConfigurationError(
                f"unknown emulation stage '{stage}'",
                details={"known_stages": list(EMULATION_STAGES)},
            )
        self.stage = stage
        self.cochlea = CochleaSurrogate(grid, profile, sample_rate)
        self.hair_cell = HairCellSurrogate(sample_rate)
        self.nerve = NerveSurrogate(sample_rate)

    def __call__(self, audio: np.ndarray) -> tuple[np.ndarray, Target]:
        x = np.asarray(audio, dtype=np.float64).reshape(1, -1)
        if self.stage == "identity":
            return x, x.copy()
        bm = self.cochlea.forward(x[0])
        if self.stage == "cochlea":
            return x, BM_SCALE * bm
        ihc = self.hair_cell.forward(bm)
        if self.stage == "ihc":
            return BM_SCALE * bm, IHC_SCALE * ihc
        return IHC_SCALE * ihc, [ANF_SCALE * f for f in self.nerve.forward(ihc)]


# ================================
# Frames y ejemplos
# ================================

@dataclass(frozen=True, eq=False)
class Example:
    """Entrada con contexto y objetivo del núcleo."""

    inputs: np.ndarray
    target: Target


def model_contexts(model: Module) -> tuple[int, int]:
    """(L_l, L_r) del modelo; 0 para modelos sin recorte de contexto."""
    spec = getattr(model, "spec", None) or getattr(model, "shared_spec", None)
    if spec is None:
        return 0, 0
    return spec.left_context, spec.right_context


def segment_channels(data: np.ndarray, window: int, left: int, right: int) -> list[np.ndarray]:
    """Segmenta cada canal de un arreglo C × T; devuelve frames C × (L_l + L_w + L_r)."""
    data = np.atleast_2d(data)
    per_channel = [segment(row, window, left, right, window) for row in data]
    return [
        np.stack([frames[k].samples for frames in per_channel])
        for k in range(len(per_channel[0]))
    ]


def _split_target(target: Target, window: int) -> list[Target]:
    if isinstance(target, list):
        parts = [segment_channels(t, window, 0, 0) for t in target]
        return [list(group) for group in zip(*parts, strict=True)]
    return list(segment_channels(target, window, 0, 0))


def _flatten(example: Example) -> list[Example]:
    """Separa cada canal CF en un ejemplo de un solo canal."""
    n = example.inputs.shape[0]
    out = []
    for c in range(n):
        if isinstance(example.target, list):
            target: Target = [t[c:c + 1] for t in example.target]
        else:
            target = example.target[c:c + 1]
        out.append(Example(example.inputs[c:c + 1], target))
    return out


def build_emulation_examples(
    student: Module,
    target_fn: Callable[[np.ndarray], tuple[np.ndarray, Target]],
    data: Sequence[AudioBuffer],
    window: int,
    flatten_channels: bool = False,
) -> list[Example]:
    """Aplica el objetivo a cada clip y segmenta entradas y objetivos en frames."""
    left, right = model_contexts(student)
    examples: list[Example] = []
    for buffer in data:
        inputs, target = target_fn(buffer.samples)
        frames = segment_channels(inputs, window, left, right)
        targets = _split_target(target, window)
        for frame, frame_target in zip(frames, targets, strict=True):
            example = Example(frame, frame_target)
            examples.extend(_flatten(example) if flatten_channels else [example])
    return examples


def split_examples(examples: list[Example], cfg: TrainConfig) -> tuple[list[Example], list[Example]]:
    """
    Partición fija por semilla: el último `val_fraction` de una permutación.

    Sin frames de validación, la validación usa el conjunto de entrenamiento.
    """
    if not examples:
        raise InvalidSignalError("no training data")
    rng = np.random.default_rng(cfg.seed)
    order = rng.permutation(len(examples))
    n_val = int(round(cfg.val_fraction * len(examples)))
    if n_val == 0 or n_val >= len(examples):
        return examples, examples
    train = [examples[i] for i in order[:-n_val]]
    val = [examples[i] for i in order[-n_val:]]
    return train, val


# ================================
# Bucle de entrenamiento
# ================================

StepFn = Callable[[Example, float], float]


def fit(
    store: ParamStore,
    step: StepFn,
    evaluate: Callable[[Example], float],
    train: list[Example],
    val: list[Example],
    cfg: TrainConfig,
    task: str,
) -> TrainingRun:
    """
    Bucle común: barajado por época, lotes con gradiente medio, Adam y
    programa de lr por meseta sobre la pérdida de validación.

    `step(example, scale)` hace forward + backward acumulando gradientes
    escalados por `scale` y devuelve la pérdida; `evaluate` sólo forward.
    """
    rng = np.random.default_rng(cfg.seed)

    def validation_loss() -> float:
        return float(np.mean([evaluate(ex) for ex in val]))

    run = TrainingRun(task=task, initial_val_loss=validation_loss(), initial_lr=cfg.lr)
    logger.info("training started", extra={"task": task, "train_frames": len(train),
                                           "val_frames": len(val),
                                           "initial_val_loss": run.initial_val_loss})
    state = AdamState()
    lr = cfg.lr
    for _ in range(cfg.epochs):
        order = rng.permutation(len(train))
        losses = []
        for start in range(0, len(order), cfg.batch):
            batch = order[start:start + cfg.batch]
            store.zero_grad()
            for idx in batch:
                losses.append(step(train[idx], 1.0 / len(batch)))
            adam_step(store, state, lr)
        record = run.record_epoch(float(np.mean(losses)), validation_loss(), lr)
        logger.info("epoch complete", extra={"task": task, "epoch": record.epoch,
                                             "train_loss": record.train_loss,
                                             "val_loss": record.val_loss, "lr": record.lr})
        lr = lr_schedule(run, cfg.patience)
    return run


# ================================
# Emuladores
# ================================

def train_emulator(
    student: Module,
    target_fn: Callable[[np.ndarray], tuple[np.ndarray, Target]],
    data: Sequence[AudioBuffer],
    cfg: TrainConfig,
    window: int = DEFAULT_WINDOW,
    flatten_channels: bool = False,
) -> TrainingRun:
    """
    Entrena `student` para imitar `target_fn` minimizando MAE por frame.

    Args:
        student: Modelo (DCoNNear, ThreeBranchANF o AutoencoderBaseline)
        target_fn: audio → (entrada, objetivo); ver StageTarget
        data: AudioBuffer calibrados según level_plan de la etapa
        window: Longitud del núcleo de cada frame
        flatten_channels: Entrena sobre canales CF independientes

    Raises:
        InvalidSignalError: Sin datos
    """
    if not data:
        raise InvalidSignalError("no training data")
    examples = build_emulation_examples(student, target_fn, data, window, flatten_channels)
    train, val = split_examples(examples, cfg)

    def loss_of(example: Example) -> tuple[float, Target]:
        out = student.forward(example.inputs)
        if isinstance(out, list):
            assert isinstance(example.target, list)
            return mae_loss_multi(out, example.target)
        assert isinstance(example.target, np.ndarray)
        return mae_loss(out, example.target)

    def step(example: Example, scale: float) -> float:
        value, grad = loss_of(example)
        student.backward([g * scale for g in grad] if isinstance(grad, list) else grad * scale)
        return value

    return fit(student.store, step, lambda ex: loss_of(ex)[0], train, val, cfg, "emulator")


# ================================
# Lazo cerrado
# ================================

class ClosedLoopChain:
    """
    Procesador seguido de un camino auditivo congelado.

    forward: audio con contexto → r_f; backward: gradiente de r_f → gradiente
    del audio, acumulando sólo en los parámetros del procesador.
    """

    def __init__(self, processor: Module, pathway: IAuditoryPathway) -> None:
        self.processor = processor
        self.pathway = pathway

    @property
    def store(self) -> ParamStore:
        return self.processor.store

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = self.processor.forward(np.atleast_2d(x))
        return self.pathway.forward(y[0])

    def backward(self, g: np.ndarray) -> np.ndarray:
        g_audio = self.pathway.backward(g)
        return self.processor.backward(g_audio[None, :])


def require_frozen(*pathways: IAuditoryPathway) -> list[str]:
    """
    Verifica el congelamiento y devuelve las huellas de los caminos.

    Raises:
        ConfigurationError: Algún camino tiene parámetros sin congelar
    """
    for pathway in pathways:
        if not pathway.frozen:
            raise ConfigurationError(
                "auditory pathway must be frozen before closed-loop training",
                details={"profile": pathway.profile.name},
            )
    return [pathway.fingerprint() for pathway in pathways]


def _verify_unchanged(pathways: Sequence[IAuditoryPathway], before: list[str]) -> None:
    after = [pathway.fingerprint() for pathway in pathways]
    if after != before:
        raise ConfigurationError("auditory pathway parameters changed during training")


def _audio_frames(processor: Module, samples: np.ndarray, window: int) -> list[np.ndarray]:
    left, right = model_contexts(processor)
    return segment_channels(samples, window, left, right)


def _cores(samples: np.ndarray, window: int) -> list[np.ndarray]:
    return segment_channels(samples, window, 0, 0)


def train_ha_closed_loop(
    ha: Module,
    nh_path: IAuditoryPathway,
    hi_path: IAuditoryPathway,
    data: Sequence[AudioBuffer],
    cfg: TrainConfig,
    window: int = DEFAULT_WINDOW,
) -> TrainingRun:
    """
    Entrena un procesador HA con ha_loss entre r_f (NH, audio original) y
    r̂_f (HI, audio procesado).

    Raises:
        ConfigurationError: Caminos sin congelar
        InvalidSignalError: Sin datos
    """
    before = require_frozen(nh_path, hi_path)
    if not data:
        raise InvalidSignalError("no training data")
    examples = []
    for buffer in data:
        frames = _audio_frames(ha, buffer.samples, window)
        for frame, core in zip(frames, _cores(buffer.samples, window), strict=True):
            examples.append(Example(frame, nh_path.forward(core[0])))
    train, val = split_examples(examples, cfg)
    chain = ClosedLoopChain(ha, hi_path)

    def evaluate(example: Example) -> float:
        assert isinstance(example.target, np.ndarray)
        return ha_loss(example.target, chain.forward(example.inputs), cfg.alpha, cfg.beta)[0]

    def step(example: Example, scale: float) -> float:
        assert isinstance(example.target, np.ndarray)
        value, grad = ha_loss(example.target, chain.forward(example.inputs), cfg.alpha, cfg.beta)
        chain.backward(grad * scale)
        return value

    run = fit(ha.store, step, evaluate, train, val, cfg, "ha")
    _verify_unchanged([nh_path, hi_path], before)
    return run


def train_se_closed_loop(
    se: Module,
    nh_path: IAuditoryPathway,
    pairs: Sequence[tuple[AudioBuffer, AudioBuffer]],
    cfg: TrainConfig,
    window: int = DEFAULT_WINDOW,
) -> TrainingRun:
    """
    Entrena un procesador SE con MAE entre NH(limpio) y NH(se(ruidoso)).

    Args:
        pairs: (ruidoso, limpio) AudioBuffer de igual longitud
    """
    before = require_frozen(nh_path)
    if not pairs:
        raise InvalidSignalError("no training data")
    examples = []
    for noisy, clean in pairs:
        frames = _audio_frames(se, noisy.samples, window)
        for frame, core in zip(frames, _cores(clean.samples, window), strict=True):
            examples.append(Example(frame, nh_path.forward(core[0])))
    train, val = split_examples(examples, cfg)
    chain = ClosedLoopChain(se, nh_path)

    def evaluate(example: Example) -> float:
        assert isinstance(example.target, np.ndarray)
        return mae_loss(chain.forward(example.inputs), example.target)[0]

    def step(example: Example, scale: float) -> float:
        assert isinstance(example.target, np.ndarray)
        value, grad = mae_loss(chain.forward(example.inputs), example.target)
        chain.backward(grad * scale)
        return value

    run = fit(se.store, step, evaluate, train, val, cfg, "se")
    _verify_unchanged([nh_path], before)
    return run
