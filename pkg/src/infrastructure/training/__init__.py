# ================================
# Closed-Loop Training
# ================================
# Pérdidas, Adam y programa de lr, corpus de escritorio y arneses de
# entrenamiento de emuladores y procesadores HA/SE.
# ================================

from .corpus import (
    CORPUS_KINDS,
    CorpusItem,
    calibrate_corpus,
    generate_corpus,
    level_plan,
    mix_at_snr,
    speech_shaped_noise,
)
from .losses import ha_loss, mae_loss, mae_loss_multi
from .optim import Adam, AdamState, adam_step, lr_schedule
from .trainers import (
    DEFAULT_WINDOW,
    EMULATION_STAGES,
    ClosedLoopChain,
    Example,
    StageTarget,
    build_emulation_examples,
    model_contexts,
    require_frozen,
    segment_channels,
    train_emulator,
    train_ha_closed_loop,
    train_se_closed_loop,
)

__all__ = [
    "mae_loss",
    "mae_loss_multi",
    "ha_loss",
    "Adam",
    "AdamState",
    "adam_step",
    "lr_schedule",
    "CORPUS_KINDS",
    "CorpusItem",
    "generate_corpus",
    "level_plan",
    "calibrate_corpus",
    "mix_at_snr",
    "speech_shaped_noise",
    "DEFAULT_WINDOW",
    "EMULATION_STAGES",
    "Example",
    "StageTarget",
    "ClosedLoopChain",
    "build_emulation_examples",
    "model_contexts",
    "require_frozen",
    "segment_channels",
    "train_emulator",
    "train_ha_closed_loop",
    "train_se_closed_loop",
]
