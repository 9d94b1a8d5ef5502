"""
Tests Unitarios - Modelos
=========================

dCoNNear, modelo ANF de tres ramas, autoencoders de referencia,
presets publicados y campo receptivo.
"""

import numpy as np
import pytest

from src.domain.exceptions import ConfigurationError, ShapeError
from src.domain.value_objects import ActivationKind, ModelSpec
from src.infrastructure.nn import (
    PUBLISHED_PARAM_COUNTS,
    AutoencoderBaseline,
    DCoNNear,
    ThreeBranchANF,
    build_strided_stack,
    gradient_check,
    published_anf_specs,
    published_spec,
    receptive_field_closed_form,
    receptive_field_empirical,
)

pytestmark = pytest.mark.unit


# ================================
# Tests de dCoNNear
# ================================

def test_dconnear_output_shape_after_trim():
    """Test que la salida pierde L_l + L_r muestras."""
    spec = ModelSpec(blocks_per_repeat=2, history_taps=3, hidden=4, c_in=1, c_out=3,
                     left_context=8, right_context=4)
    model = DCoNNear(spec, seed=0)

    y = model.forward(np.zeros((1, 100)))

    assert y.shape == (3, 88)
    assert model.forward(np.zeros((1, 100)), trim=False).shape == (3, 100)


def test_dconnear_rejects_short_input(tiny_spec):
    """Test de entrada más corta que el contexto."""
    model = DCoNNear(tiny_spec.with_changes(left_context=10), seed=0)

    with pytest.raises(ShapeError):
        model.forward(np.zeros((1, 10)))


def test_dconnear_rejects_wrong_channels(tiny_spec):
    """Test de canales de entrada incorrectos."""
    model = DCoNNear(tiny_spec, seed=0)

    with pytest.raises(ShapeError):
        model.forward(np.zeros((2, 32)))


def test_passthrough_model_starts_as_identity(rng):
    """Test que un modelo con passthrough es la identidad al inicializarse."""
    # Arrange
    spec = ModelSpec(blocks_per_repeat=3, history_taps=4, future_taps=2, hidden=6,
                     passthrough=True, left_context=5, right_context=3)
    model = DCoNNear(spec, seed=2)
    x = rng.standard_normal((1, 64))

    # Act
    y = model.forward(x)

    # Assert
    assert np.array_equal(y, x[:, 5:61])


def test_zeroed_blocks_reduce_to_projection_and_head(rng):
    """Test de identidad residual: sin bloques queda cabezal ∘ proyección."""
    # Arrange
    spec = ModelSpec(blocks_per_repeat=2, repeats=2, history_taps=3, future_taps=2, hidden=5,
                     c_in=2, c_out=3)
    model = DCoNNear(spec, seed=3)
    for block in model.blocks:
        for _, weight, _ in block.store.items():
            weight[...] = 0.0
    model.output.skip[...] = rng.uniform(0.5, 1.5, spec.n_blocks)
    x = rng.standard_normal((2, 40))

    # Act
    y = model.forward(x)
    h = model.input.W @ x + model.input.B[:, None]
    expected = model.output.head.W @ np.tanh(model.output.skip.sum() * h) + model.output.head.B[:, None]

    # Assert
    assert np.max(np.abs(y - expected)) < 1e-12


def test_dconnear_is_shift_equivariant(rng, tiny_spec):
    """Test que desplazar la entrada k muestras desplaza la salida k muestras lejos de los bordes."""
    # Arrange
    model = DCoNNear(tiny_spec.with_changes(hidden=6), seed=8)
    x = rng.standard_normal((1, 120))
    shift, margin = 7, 20

    # Act
    full = model.forward(x)
    shifted = model.forward(x[:, shift:])

    # Assert
    stop = shifted.shape[1] - margin
    assert np.allclose(shifted[:, margin:stop], full[:, shift + margin:shift + stop], atol=1e-12)


def test_same_seed_same_weights(tiny_spec):
    """Test de inicialización determinista."""
    assert DCoNNear(tiny_spec, seed=5).store.fingerprint() == DCoNNear(tiny_spec, seed=5).store.fingerprint()
    assert DCoNNear(tiny_spec, seed=5).store.fingerprint() != DCoNNear(tiny_spec, seed=6).store.fingerprint()


@pytest.mark.parametrize(
    "spec",
    [
        ModelSpec(blocks_per_repeat=2, history_taps=3, future_taps=2, hidden=4),
        ModelSpec(blocks_per_repeat=2, repeats=2, history_taps=2, hidden=3, projection=2,
                  c_in=2, c_out=3, act_out=ActivationKind.SIGMOID),
        ModelSpec(blocks_per_repeat=1, history_taps=2, future_taps=1, hidden=4,
                  passthrough=True, left_context=3, right_context=2),
    ],
    ids=["basic", "projection", "passthrough"],
)
def test_dconnear_gradients(spec):
    """Test de gradientes del modelo completo."""
    model = DCoNNear(spec, seed=1)

    error = gradient_check(model, (spec.c_in, 24), seed=4, max_entries=24)

    assert error < 1e-4


def test_frozen_model_still_propagates_input_gradient(tiny_spec):
    """Test que congelar no corta el gradiente hacia la entrada."""
    model = DCoNNear(tiny_spec, seed=0)
    model.freeze()

    model.forward(np.ones((1, 20)))
    gx = model.backward(np.ones((1, 20)))

    assert model.frozen
    assert np.any(gx != 0.0)
    assert all(np.all(grad == 0.0) for _, _, grad in model.store.items())


# ================================
# Tests de ANF de tres ramas
# ================================

def test_three_branch_returns_one_output_per_fiber():
    """Test de tres salidas no negativas (ReLU final)."""
    spec = ModelSpec(blocks_per_repeat=2, history_taps=2, future_taps=1, hidden=4, c_in=3, c_out=3,
                     act_final=ActivationKind.RELU)
    model = ThreeBranchANF(spec, spec, seed=0)

    outputs = model.forward(np.random.default_rng(0).standard_normal((3, 30)))

    assert len(outputs) == 3
    assert all(out.shape == (3, 30) and np.all(out >= 0.0) for out in outputs)


def test_three_branch_gradients():
    """Test de gradientes a través del tronco y las tres ramas."""
    spec = ModelSpec(blocks_per_repeat=2, history_taps=2, future_taps=1, hidden=3, c_in=2, c_out=2)
    model = ThreeBranchANF(spec, spec, seed=0)

    assert gradient_check(model, (2, 16), seed=2, max_entries=16) < 1e-4


def test_three_branch_needs_matching_hidden():
    """Test que rama y tronco comparten el ancho oculto."""
    with pytest.raises(ShapeError):
        ThreeBranchANF(ModelSpec(hidden=4), ModelSpec(hidden=5))


# ================================
# Tests de Autoencoders
# ================================

@pytest.mark.parametrize("mode", ["transposed", "subpixel", "nearest"])
def test_autoencoder_restores_length(mode):
    """Test que codificador y decodificador conservan la longitud."""
    model = AutoencoderBaseline(depth=3, upsampling=mode, base_channels=2, kernel=8, seed=0)

    y = model.forward(np.zeros((1, 64)))

    assert y.shape == (1, 64)
    assert model.encoder.forward(np.zeros((1, 64))).shape == (8, 8)


def test_autoencoder_rejects_indivisible_length():
    """Test de longitud no divisible por 2^depth."""
    model = AutoencoderBaseline(depth=3, upsampling="nearest", base_channels=2, kernel=8)

    with pytest.raises(ShapeError):
        model.forward(np.zeros((1, 100)))


@pytest.mark.parametrize("mode", ["transposed", "subpixel", "nearest"])
def test_autoencoder_gradients(mode):
    """Test de gradientes de los tres decodificadores."""
    model = AutoencoderBaseline(depth=2, upsampling=mode, base_channels=2, kernel=4, seed=0)

    assert gradient_check(model, (1, 16), seed=3, max_entries=16) < 1e-4


def test_strided_stack_decimates_without_gain():
    """Test que la pila identidad sólo toma una de cada 2^depth muestras."""
    x = np.arange(32.0)

    y = build_strided_stack(3).forward(x)

    assert y.shape == (1, 4)
    assert np.array_equal(y[0], x[::8])


# ================================
# Tests de Presets
# ================================

@pytest.mark.parametrize("name", ["cochlear", "ihc", "ha"])
def test_published_param_counts_within_ten_percent(name):
    """Test del recuento de parámetros de los presets con 201 CFs."""
    model = DCoNNear(published_spec(name), seed=0)

    published = PUBLISHED_PARAM_COUNTS[name]
    assert abs(model.param_count - published) <= 0.1 * published


def test_published_anf_param_count_within_ten_percent():
    """Test del recuento del modelo ANF de tres ramas."""
    shared, branch = published_anf_specs()

    model = ThreeBranchANF(shared, branch, seed=0)

    assert abs(model.param_count - PUBLISHED_PARAM_COUNTS["anf"]) <= 0.1 * PUBLISHED_PARAM_COUNTS["anf"]


def test_ha_preset_is_causal_with_passthrough():
    """Test que el preset HA suma la entrada y tiene contexto izquierdo largo."""
    spec = published_spec("ha")

    assert spec.passthrough
    assert spec.c_in == spec.c_out == 1
    assert spec.left_context > spec.right_context


def test_unknown_preset():
    """Test de preset inexistente."""
    with pytest.raises(ConfigurationError):
        published_spec("retina")


# ================================
# Tests de Campo Receptivo
# ================================

def test_closed_form_counts_dilated_taps():
    """Test de la forma cerrada sobre un spec pequeño."""
    spec = ModelSpec(blocks_per_repeat=3, repeats=2, history_taps=3, future_taps=1, hidden=2)

    # dilataciones 1, 2, 4, 1, 2, 4: cada bloque aporta 3·d
    assert receptive_field_closed_form(spec) == 1 + 3 * (1 + 2 + 4) * 2


@pytest.mark.parametrize(
    "spec",
    [
        ModelSpec(blocks_per_repeat=1, history_taps=1, hidden=2),
        ModelSpec(blocks_per_repeat=2, history_taps=3, hidden=3),
        ModelSpec(blocks_per_repeat=3, history_taps=4, future_taps=2, hidden=2),
        ModelSpec(blocks_per_repeat=4, repeats=2, history_taps=5, future_taps=5, hidden=2, projection=1),
        ModelSpec(blocks_per_repeat=2, repeats=3, history_taps=2, future_taps=3, hidden=3, c_in=2, c_out=2),
        ModelSpec(blocks_per_repeat=5, history_taps=8, hidden=2, act_hidden=ActivationKind.SIGMOID),
    ],
)
def test_closed_form_matches_empirical(spec):
    """Test que la forma cerrada coincide con la medición por perturbación."""
    model = DCoNNear(spec, seed=0)

    assert receptive_field_empirical(model) == receptive_field_closed_form(spec)


def test_three_branch_receptive_field_crosses_trunk_and_one_branch():
    """Test de campo receptivo del modelo de tres ramas."""
    shared = ModelSpec(blocks_per_repeat=4, history_taps=3, future_taps=2, hidden=2)
    branch = ModelSpec(blocks_per_repeat=4, history_taps=3, future_taps=2, hidden=2)
    model = ThreeBranchANF(shared, branch, seed=0)

    assert receptive_field_empirical(model) == receptive_field_closed_form(shared, branch)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ihc", "anf"])
def test_preset_receptive_fields(name):
    """Test de campo receptivo de los presets con pocas CFs."""
    if name == "anf":
        shared, branch = published_anf_specs(n_cf=2)
        model = ThreeBranchANF(shared, branch, seed=0)
        expected = receptive_field_closed_form(shared, branch)
    else:
        spec = published_spec(name, n_cf=2)
        model = DCoNNear(spec, seed=0)
        expected = receptive_field_closed_form(spec)

    assert receptive_field_empirical(model) == expected
