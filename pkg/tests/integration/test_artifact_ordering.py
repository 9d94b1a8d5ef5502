"""
Tests de Integración - Orden de Artefactos
==========================================

Con la misma semilla, los autoencoders con decimación/upsampling muestran
artefactos espectrales que un dCoNNear a tasa completa no tiene, tanto con
pesos aleatorios como tras entrenar la misma tarea coclear.
"""

import pytest

from src.application.use_cases.common import DESK_SPEC
from src.domain.value_objects import CFGrid, ModelSpec, TrainConfig
from src.infrastructure.analysis import NUMERIC_FLOOR_DB, ModelSystem, imaging_probe, mirror_probe, tone_probe
from src.infrastructure.nn import AutoencoderBaseline, DCoNNear
from src.infrastructure.training import StageTarget, calibrate_corpus, generate_corpus, train_emulator

pytestmark = [pytest.mark.integration, pytest.mark.slow]

SEED = 0
THD_MARGIN_DB = 20.0


@pytest.fixture(scope="module")
def dconnear() -> DCoNNear:
    return DCoNNear(ModelSpec.from_dict(DESK_SPEC), seed=SEED)


@pytest.fixture(scope="module")
def dconnear_thd(dconnear) -> float:
    report = tone_probe(ModelSystem(dconnear), name="dconnear")
    assert report.thd_db is not None
    return report.thd_db


@pytest.mark.parametrize("mode", ["transposed", "subpixel"])
def test_resampling_autoencoders_have_higher_thd(dconnear_thd, mode):
    """Test que el autoencoder de profundidad 4 distorsiona más que dCoNNear."""
    baseline = AutoencoderBaseline(4, mode, seed=SEED)

    report = tone_probe(ModelSystem(baseline), name=f"baseline:{mode}")

    assert report.thd_db is not None
    assert report.thd_db > dconnear_thd
    assert report.thd_db >= dconnear_thd + THD_MARGIN_DB


def test_nearest_decoder_images_while_dconnear_stays_at_floor(dconnear):
    """Test de energía espejo: decodificador nearest contra dCoNNear."""
    decoder = AutoencoderBaseline(4, "nearest", seed=SEED).decoder

    nearest_db = imaging_probe(decoder)
    dconnear_db = mirror_probe(ModelSystem(dconnear), f0=300.0)

    assert nearest_db > NUMERIC_FLOOR_DB
    assert dconnear_db < NUMERIC_FLOOR_DB


def test_trained_dconnear_keeps_lower_thd_than_transposed_baseline(nh_profile):
    """Test que tras entrenar la misma tarea coclear, dCoNNear sigue con menos THD."""
    # Arrange
    grid = CFGrid((1000.0,))
    target = StageTarget("cochlea", grid, nh_profile)
    data = calibrate_corpus([item.clean for item in generate_corpus(4, 0.2, seed=SEED)], "cochlea")
    cfg = TrainConfig(lr=1e-3, epochs=3, batch=4, seed=SEED, val_fraction=0.25)
    dconnear = DCoNNear(ModelSpec.from_dict({**DESK_SPEC, "hidden": "8"}), seed=SEED)
    baseline = AutoencoderBaseline(4, "transposed", seed=SEED, base_channels=4, kernel=8)

    # Act
    for model in (dconnear, baseline):
        train_emulator(model, target, data, cfg, window=256)
    dconnear_thd = tone_probe(ModelSystem(dconnear), name="dconnear").thd_db
    baseline_thd = tone_probe(ModelSystem(baseline), name="baseline:transposed").thd_db

    # Assert
    assert dconnear_thd is not None and baseline_thd is not None
    assert baseline_thd >= dconnear_thd + 2.0
