"""
Tests Unitarios - Entrenamiento
===============================

Pérdidas, Adam, programa de lr, corpus sembrado y arneses de emulación.
"""

from dataclasses import replace

import numpy as np
import pytest

from src.domain.entities import ParamStore, TrainingRun
from src.domain.exceptions import ConfigurationError, InvalidSignalError, InvalidSpecError, ShapeError
from src.domain.value_objects import CFGrid, ModelSpec, TrainConfig
from src.infrastructure.auditory import ANF_SCALE, BM_SCALE, EmulatedPathway, SurrogatePathway
from src.infrastructure.dsp import rms, scale_to_spl, spl_to_pa, tone
from src.infrastructure.nn import DCoNNear, ThreeBranchANF, gradient_check
from src.infrastructure.training import (
    CORPUS_KINDS,
    AdamState,
    ClosedLoopChain,
    StageTarget,
    adam_step,
    build_emulation_examples,
    calibrate_corpus,
    generate_corpus,
    ha_loss,
    level_plan,
    lr_schedule,
    mae_loss,
    mae_loss_multi,
    mix_at_snr,
    require_frozen,
    segment_channels,
    train_emulator,
)

pytestmark = pytest.mark.unit


# ================================
# Tests de Pérdidas
# ================================

def test_mae_loss_value_and_gradient():
    """Test del MAE y su subgradiente."""
    pred = np.array([[1.0, 2.0, 3.0, 4.0]])
    target = np.array([[1.0, 0.0, 5.0, 4.0]])

    value, grad = mae_loss(pred, target)

    assert value == pytest.approx(1.0)
    assert np.array_equal(grad, [[0.0, 0.25, -0.25, 0.0]])


def test_mae_loss_rejects_misaligned():
    """Test de formas distintas."""
    with pytest.raises(ShapeError):
        mae_loss(np.zeros((1, 4)), np.zeros((1, 5)))


def test_mae_loss_multi_averages_over_all_outputs():
    """Test del MAE sobre las tres fibras juntas."""
    preds = [np.ones((1, 2)), np.zeros((1, 2)), np.zeros((1, 2))]
    targets = [np.zeros((1, 2))] * 3

    value, grads = mae_loss_multi(preds, targets)

    assert value == pytest.approx(2.0 / 6.0)
    assert np.allclose(grads[0], 1.0 / 6.0)


def test_ha_loss_gradient_matches_finite_differences(rng):
    """Test del gradiente de la pérdida combinada."""
    # Arrange
    r = rng.standard_normal((3, 8))
    r_hat = rng.standard_normal((3, 8))
    value, grad = ha_loss(r, r_hat, alpha=30.0, beta=1.0)
    eps = 1e-6

    # Act
    bumped = r_hat.copy()
    bumped[1, 4] += eps
    numeric = (ha_loss(r, bumped, 30.0, 1.0)[0] - value) / eps

    # Assert
    assert grad[1, 4] == pytest.approx(numeric, rel=1e-4)


def test_ha_loss_is_zero_on_match(rng):
    """Test que respuestas idénticas no tienen pérdida."""
    r = rng.standard_normal((2, 5))

    value, grad = ha_loss(r, r.copy())

    assert value == 0.0
    assert np.all(grad == 0.0)


# ================================
# Tests de Optimización
# ================================

def test_adam_first_step_moves_by_lr():
    """Test que el primer paso de Adam mueve cada peso ~lr contra el gradiente."""
    store = ParamStore()
    grad = store.register("w", np.array([1.0, -1.0]))
    grad[...] = [0.5, -2.0]

    adam_step(store, AdamState(), lr=0.1)

    assert store.weights["w"] == pytest.approx([0.9, -0.9], abs=1e-6)


def test_adam_skips_frozen_store():
    """Test que un store congelado no se modifica."""
    store = ParamStore()
    grad = store.register("w", np.ones(2))
    grad[...] = 1.0
    store.freeze()

    state = adam_step(store, AdamState(), lr=0.1)

    assert state.t == 0
    assert np.all(store.weights["w"] == 1.0)


def test_lr_halves_after_patience_epochs_without_improvement():
    """Test del programa de lr por meseta."""
    run = TrainingRun(task="emulator", initial_val_loss=1.0, initial_lr=0.1)
    for val in (0.9, 0.95, 0.92):
        run.record_epoch(val, val, run.current_lr)

    assert lr_schedule(run, patience=2) == pytest.approx(0.05)
    assert lr_schedule(run, patience=3) == pytest.approx(0.1)


def test_lr_plateau_counter_restarts_after_each_halving():
    """Test que tras reducir a la mitad se cuentan de nuevo `patience` épocas y una mejora no restaura la tasa."""
    # Arrange
    run = TrainingRun(task="emulator", initial_val_loss=1.0, initial_lr=0.1)
    schedule = []

    # Act
    for val in (0.9, 0.95, 0.92, 0.93, 0.94, 0.5):
        run.record_epoch(val, val, run.current_lr)
        schedule.append(lr_schedule(run, patience=2))

    # Assert
    assert schedule == pytest.approx([0.1, 0.1, 0.05, 0.05, 0.025, 0.025])


def test_adam_does_not_move_on_zero_gradient():
    """Test que un gradiente nulo desde el estado inicial deja los pesos intactos."""
    store = ParamStore()
    store.register("w", np.array([0.3, -1.2, 4.0]))
    before = store.weights["w"].copy()

    state = adam_step(store, AdamState(), lr=0.1)

    assert state.t == 1
    assert np.array_equal(store.weights["w"], before)


# ================================
# Tests de Corpus
# ================================

def test_corpus_is_deterministic_per_seed():
    """Test que la misma semilla produce los mismos clips."""
    first = generate_corpus(4, 0.05, seed=9)
    second = generate_corpus(4, 0.05, seed=9)

    assert [item.kind for item in first] == [CORPUS_KINDS[i % 3] for i in range(4)]
    assert all(np.array_equal(a.clean.samples, b.clean.samples) for a, b in zip(first, second, strict=True))


def test_corpus_clips_are_calibrated():
    """Test de calibración a 70 dB SPL."""
    items = generate_corpus(3, 0.05, seed=1)

    for item in items:
        assert rms(item.clean) == pytest.approx(spl_to_pa(70.0), rel=1e-9)


def test_empty_corpus_is_allowed():
    """Test de count = 0."""
    assert generate_corpus(0, 0.05, seed=0) == []


def test_negative_count_is_invalid():
    """Test de count negativo."""
    with pytest.raises(InvalidSpecError):
        generate_corpus(-1, 0.05, seed=0)


def test_noisy_pairs_respect_snr_range():
    """Test que la SNR sorteada cae en el rango y se cumple en la mezcla."""
    items = generate_corpus(5, 0.05, seed=2, snr_range=(0.0, 10.0))

    for item in items:
        assert item.noisy is not None and item.snr_db is not None
        assert 0.0 <= item.snr_db <= 10.0
        noise = item.noisy.samples - item.clean.samples
        measured = 20.0 * np.log10(rms(item.clean) / np.sqrt(np.mean(noise ** 2)))
        assert measured == pytest.approx(item.snr_db, abs=1e-6)


def test_mix_with_silent_noise_returns_clean():
    """Test de ruido nulo."""
    clean = tone(1000.0, 70.0, 0.01)

    assert mix_at_snr(clean, np.zeros(len(clean)), 5.0) is clean


def test_level_plans_alternate_high_levels():
    """Test de niveles por etapa."""
    assert level_plan("cochlea") == (70.0,)
    assert level_plan("ihc") == (70.0, 130.0)
    with pytest.raises(ConfigurationError):
        level_plan("retina")

    clips = calibrate_corpus([tone(500.0, 50.0, 0.01)] * 2, "anf")
    assert rms(clips[1]) / rms(clips[0]) == pytest.approx(10.0 ** 3)


# ================================
# Tests de Emulación
# ================================

def test_stage_targets_use_training_scales(small_grid, nh_profile):
    """Test de escalas de objetivo de cóclea y ANF."""
    audio = tone(1000.0, 70.0, 0.02).samples
    target = StageTarget("cochlea", small_grid, nh_profile)

    inputs, bm = target(audio)
    anf_inputs, fibers = StageTarget("anf", small_grid, nh_profile)(audio)

    assert inputs.shape == (1, 400)
    assert np.allclose(bm, BM_SCALE * target.cochlea.forward(audio))
    assert len(fibers) == 3
    assert np.allclose(fibers[0][:, 0], ANF_SCALE * 60.0)
    assert anf_inputs.shape == (5, 400)


def test_unknown_stage(small_grid, nh_profile):
    """Test de etapa de emulación desconocida."""
    with pytest.raises(ConfigurationError):
        StageTarget("retina", small_grid, nh_profile)


def test_segment_channels_adds_model_context(rng):
    """Test de frames multicanal con contexto."""
    frames = segment_channels(rng.standard_normal((3, 100)), window=32, left=8, right=4)

    assert len(frames) == 4
    assert frames[0].shape == (3, 44)


def test_examples_flatten_channels(small_grid, nh_profile):
    """Test que flatten separa cada CF en un ejemplo."""
    student = DCoNNear(ModelSpec(hidden=2), seed=0)
    data = [scale_to_spl(tone(1000.0, 70.0, 0.02), 70.0)]

    examples = build_emulation_examples(student, StageTarget("ihc", small_grid, nh_profile), data,
                                        window=200, flatten_channels=True)

    assert len(examples) == 2 * 5
    assert examples[0].inputs.shape == (1, 200)


def test_train_emulator_improves_identity(nh_profile):
    """Test que un dCoNNear pequeño aprende la identidad."""
    # Arrange
    model = DCoNNear(ModelSpec(blocks_per_repeat=2, history_taps=2, hidden=4, left_context=4), seed=0)
    data = [item.clean for item in generate_corpus(3, 0.05, seed=3)]
    cfg = TrainConfig(lr=1e-2, epochs=6, batch=2, patience=3, seed=0, val_fraction=0.25)

    # Act
    run = train_emulator(model, StageTarget("identity", CFGrid.log_spaced(1), nh_profile), data, cfg, window=100)

    # Assert
    assert run.epochs_executed == 6
    assert run.best_val_loss < run.initial_val_loss
    assert run.lr_trajectory == sorted(run.lr_trajectory, reverse=True)


def test_train_emulator_without_data():
    """Test de corpus vacío."""
    model = DCoNNear(ModelSpec(hidden=2), seed=0)

    with pytest.raises(InvalidSignalError):
        train_emulator(model, lambda a: (a[None, :], a[None, :]), [], TrainConfig())


# ================================
# Tests de Congelamiento
# ================================

def test_require_frozen_rejects_trainable_pathway(nh_profile):
    """Test que un camino emulado sin congelar no entra al lazo cerrado."""
    cochlea = DCoNNear(ModelSpec(hidden=2, c_out=2), seed=0)
    ihc = DCoNNear(ModelSpec(hidden=2, c_in=2, c_out=2), seed=0)
    anf = ThreeBranchANF(ModelSpec(hidden=2, c_in=2, c_out=2), ModelSpec(hidden=2, c_in=2, c_out=2))
    pathway = EmulatedPathway(cochlea, ihc, anf, nh_profile)

    with pytest.raises(ConfigurationError):
        require_frozen(pathway)

    pathway.freeze()
    assert len(require_frozen(pathway)) == 1


def test_require_frozen_returns_surrogate_fingerprints(small_grid, nh_profile):
    """Test que los sustitutos siempre están congelados."""
    path = SurrogatePathway(nh_profile, small_grid)

    assert require_frozen(path) == [path.fingerprint()]


# ================================
# Tests del Gradiente de Lazo Cerrado
# ================================

class _ScaledChain:
    """Cadena con la entrada escalada a un nivel de conversación."""

    def __init__(self, chain: ClosedLoopChain, scale: float) -> None:
        self.chain = chain
        self.scale = scale

    @property
    def store(self) -> ParamStore:
        return self.chain.store

    def forward(self, x: np.ndarray) -> np.ndarray:
        return self.chain.forward(self.scale * x)

    def backward(self, g: np.ndarray) -> np.ndarray:
        return self.scale * self.chain.backward(g)


def test_ha_gradient_through_frozen_chain(small_grid, hi_profile, tiny_spec):
    """Test de gradientes de un HA pequeño a través del camino HI congelado."""
    # Arrange: cabeza no nula para que los bloques internos reciban gradiente
    rng = np.random.default_rng(8)
    spec = replace(tiny_spec, passthrough=True)
    ha = DCoNNear(spec, seed=2)
    for _, weight, _ in ha.store.items():
        weight += 0.1 * rng.standard_normal(weight.shape)
    chain = _ScaledChain(ClosedLoopChain(ha, SurrogatePathway(hi_profile, small_grid)), spl_to_pa(60.0))
    width = spec.left_context + 16 + spec.right_context

    # Act
    error = gradient_check(chain, (1, width), seed=5, step=1e-6, max_entries=24)

    # Assert
    assert ha.store.count <= 200
    assert error < 1e-3
