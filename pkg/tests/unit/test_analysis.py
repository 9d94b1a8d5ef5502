"""
Tests Unitarios - Métricas y Sondas
===================================

THD fraccional, energía por banda, NRMSE, ERB y las sondas de tono,
escalón, aliasing, imágenes y banda espejo.
"""

import math

import numpy as np
import pytest

from src.domain.entities import ENERGY_FLOOR_DB, THD_FLOOR_DB
from src.domain.exceptions import AnalysisError, ShapeError
from src.domain.value_objects import AudioBuffer, CFGrid, ModelSpec, Spectrum
from src.infrastructure.analysis import (
    NUMERIC_FLOOR_DB,
    ModelSystem,
    aliasing_probe,
    band_energy,
    erb_from_response,
    imaging_probe,
    mirror_probe,
    nrmse,
    q_erb_from_response,
    resampling_factor,
    rtf_bench,
    spectral_peaks,
    step_probe,
    thd_fractional,
    tone_probe,
)
from src.infrastructure.dsp import magnitude_spectrum, rms, sinc_interpolate, spl_to_pa, tone
from src.infrastructure.nn import AutoencoderBaseline, DCoNNear, NearestUpsample, Sequential, build_strided_stack

pytestmark = pytest.mark.unit


def _identity(audio: np.ndarray) -> np.ndarray:
    return audio


def _cubic(audio: np.ndarray) -> np.ndarray:
    return audio + 0.1 * audio ** 3


# ================================
# Tests de THD
# ================================

def test_identity_reports_thd_floor():
    """Test que un sistema sin distorsión da el centinela de piso."""
    report = tone_probe(_identity, name="identity")

    assert report.thd_db == THD_FLOOR_DB
    assert report.thd_floor
    assert report.stimulus.kind == "tone"
    assert "0-500" in report.band_energies


def test_cubic_system_thd_matches_closed_form():
    """Test de THD de y = x + 0.1·x³ contra la expresión analítica."""
    # Arrange
    amplitude = math.sqrt(2.0) * spl_to_pa(70.0)
    expected = 20.0 * math.log10(0.025 * amplitude ** 2 / (1.0 + 0.075 * amplitude ** 2))

    # Act
    report = tone_probe(_cubic, freq=1000.0, level=70.0)

    # Assert
    assert report.thd_db == pytest.approx(expected, abs=1e-6)
    assert not report.thd_floor


def test_thd_is_scale_invariant():
    """Test que escalar el espectro no cambia la THD."""
    samples = _cubic(tone(1000.0, 90.0, 0.1).samples)
    spectrum = magnitude_spectrum(AudioBuffer(samples, 20000.0))
    scaled = Spectrum(spectrum.bin_freqs, 7.5 * spectrum.magnitudes, spectrum.resolution)

    assert thd_fractional(scaled, 1000.0) == pytest.approx(thd_fractional(spectrum, 1000.0), abs=1e-9)


def test_thd_without_fundamental():
    """Test de espectro sin componente en f0."""
    spectrum = magnitude_spectrum(tone(3000.0, 70.0, 0.1))

    with pytest.raises(AnalysisError, match="no fundamental detected"):
        thd_fractional(spectrum, 1000.0)


def test_tone_probe_needs_length_preserving_system():
    """Test de un sistema que recorta la salida."""
    with pytest.raises(AnalysisError):
        tone_probe(lambda audio: audio[:-10])


def test_tone_probe_needs_channel_for_multichannel_output():
    """Test de salida multicanal sin canal ni grilla."""
    def stacked(audio):
        return np.stack([audio, audio])

    with pytest.raises(AnalysisError):
        tone_probe(stacked)

    assert tone_probe(stacked, channel=1).thd_floor


# ================================
# Tests de Energía por Banda
# ================================

def test_band_energy_of_tone_is_its_power():
    """Test que la banda alrededor del tono contiene su potencia."""
    buffer = tone(1000.0, 70.0, 0.1)
    spectrum = magnitude_spectrum(buffer)

    assert band_energy(spectrum, 900.0, 1100.0) == pytest.approx(20.0 * math.log10(rms(buffer)), abs=1e-6)


def test_band_energy_is_additive_over_disjoint_bands(rng):
    """Test que bandas disjuntas suman la energía total."""
    spectrum = magnitude_spectrum(AudioBuffer(rng.standard_normal(1000), 20000.0))
    bands = [(0.0, 2500.0), (2500.0, 7000.0), (7000.0, spectrum.nyquist)]

    parts = sum(10.0 ** (band_energy(spectrum, lo, hi) / 10.0) for lo, hi in bands)
    total = band_energy(spectrum, 0.0, spectrum.nyquist)

    assert 10.0 * math.log10(parts) == pytest.approx(total, abs=1e-9)


@pytest.mark.parametrize("lo, hi", [(500.0, 500.0), (800.0, 100.0), (1.0, 2.0)], ids=["zero", "reversed", "empty"])
def test_invalid_bands(lo, hi):
    """Test de bandas vacías o invertidas."""
    spectrum = magnitude_spectrum(tone(1000.0, 70.0, 0.1))

    with pytest.raises(AnalysisError):
        band_energy(spectrum, lo, hi)


def test_silence_reports_energy_floor():
    """Test del centinela de energía nula."""
    spectrum = magnitude_spectrum(AudioBuffer(np.zeros(200), 20000.0))

    assert band_energy(spectrum, 0.0, 500.0) == ENERGY_FLOOR_DB


# ================================
# Tests de NRMSE y ERB
# ================================

def test_nrmse_of_identical_responses_is_zero():
    """Test de respuestas idénticas."""
    p = np.array([1.0, 3.0, 2.0])

    assert nrmse(p, p.copy()) == 0.0


def test_nrmse_value_and_scale_invariance():
    """Test del valor y de la invariancia ante escala conjunta."""
    p, p_hat = np.array([1.0, 2.0, 4.0]), np.array([1.0, 2.0, 2.0])
    expected = 100.0 * math.sqrt(4.0 / 3.0) / 4.0

    assert nrmse(p, p_hat) == pytest.approx(expected)
    assert nrmse(3.0 * p, 3.0 * p_hat) == pytest.approx(expected)


def test_nrmse_errors():
    """Test de longitudes distintas y máximo no positivo."""
    with pytest.raises(ShapeError):
        nrmse(np.ones(3), np.ones(4))
    with pytest.raises(AnalysisError):
        nrmse(np.zeros(3), np.ones(3))


def test_erb_of_two_tap_response():
    """Test del ERB analítico de h = [1, 1]: (N + 2)·(fs/N) / 4."""
    response = np.zeros(100)
    response[:2] = 1.0

    assert erb_from_response(response, 20000.0) == pytest.approx(102 * 200.0 / 4.0)
    assert q_erb_from_response(response, 20000.0, 1000.0) == pytest.approx(1000.0 / 5100.0)


def test_erb_of_flat_spectrum_raises():
    """Test de un impulso: espectro plano."""
    impulse = np.zeros(64)
    impulse[0] = 1.0

    with pytest.raises(AnalysisError):
        erb_from_response(impulse, 20000.0)


# ================================
# Tests de Escalón y Picos
# ================================

def test_spectral_peaks_finds_isolated_spike():
    """Test de un pico aislado sobre una línea base plana."""
    mags = np.full(101, 1e-3)
    mags[40] = 1.0
    spectrum = Spectrum(np.arange(101) * 10.0, mags, 10.0)

    assert spectral_peaks(spectrum) == [400.0]


def test_spectral_peaks_ignores_lowest_bins():
    """Test que la envolvente del escalón cerca de DC no cuenta como pico."""
    mags = np.full(101, 1e-3)
    mags[3] = 1.0
    spectrum = Spectrum(np.arange(101) * 10.0, mags, 10.0)

    assert spectral_peaks(spectrum) == []


def test_step_probe_report():
    """Test del reporte de la sonda de escalón."""
    report = step_probe(_identity, length=1024, name="identity")

    assert report.stimulus.kind == "step"
    assert len(report.spectrum) == 513
    assert report.thd_db is None


# ================================
# Tests de Aliasing e Imágenes
# ================================

def test_resampling_factor_of_stacks():
    """Test del factor neto de tasa."""
    assert resampling_factor(build_strided_stack(3)) == pytest.approx(1.0 / 8.0)
    assert resampling_factor(AutoencoderBaseline(2, "subpixel", base_channels=2, kernel=4).decoder) == 4.0


@pytest.mark.parametrize("depth", range(1, 9))
def test_prefilter_never_increases_folded_energy(depth):
    """Test que el pasa-bajos nunca aumenta la energía plegada bajo 500 Hz."""
    # Act
    plain, plain_db = aliasing_probe(build_strided_stack(depth), name="plain")
    _, filtered_db = aliasing_probe(build_strided_stack(depth, antialias=True), name="antialias")

    # Assert
    assert plain_db >= filtered_db
    assert plain.band_energies["0-500"] == plain_db
    if depth < 4:
        # Nyquist de salida ≥ 1250 Hz: el tono no se pliega
        assert plain_db == ENERGY_FLOOR_DB
    else:
        assert plain_db > NUMERIC_FLOOR_DB
        assert filtered_db < plain_db - 20.0


def test_deep_stack_folds_the_whole_tone():
    """Test que a 78.125 Hz de tasa final el tono de 1 kHz se pliega entero."""
    _, plain_db = aliasing_probe(build_strided_stack(8))

    assert plain_db == pytest.approx(20.0 * math.log10(spl_to_pa(70.0)), abs=0.5)


def test_aliasing_probe_without_decimation_is_floor():
    """Test de profundidad 0: sin decimación no hay energía plegada."""
    _, sub_db = aliasing_probe(build_strided_stack(0))

    assert sub_db == ENERGY_FLOOR_DB


def test_nearest_upsampling_images_exceed_sinc_interpolation():
    """Test que la repetición deja más imagen que la interpolación sinc."""
    nearest = imaging_probe(Sequential([("up", NearestUpsample(2))]))
    sinc = imaging_probe(lambda low: sinc_interpolate(low, 2), factor=2)

    assert nearest > sinc + 40.0


def test_transposed_decoder_creates_images():
    """Test que un decodificador transpuesto aleatorio deja energía espejo."""
    decoder = AutoencoderBaseline(2, "transposed", base_channels=2, kernel=8, seed=1).decoder

    assert imaging_probe(decoder) > NUMERIC_FLOOR_DB


def test_imaging_probe_without_upsampling_is_floor():
    """Test de factor 1."""
    assert imaging_probe(_identity, factor=1) == ENERGY_FLOOR_DB


def test_imaging_probe_rejects_tone_above_low_nyquist():
    """Test de un tono que no cabe en la tasa baja."""
    with pytest.raises(AnalysisError):
        imaging_probe(_identity, factor=4, f0=3000.0)


def test_dconnear_has_no_mirror_band():
    """Test que un dCoNNear a tasa completa no produce banda espejo."""
    model = DCoNNear(ModelSpec(blocks_per_repeat=2, history_taps=3, future_taps=2, hidden=4,
                               left_context=20, right_context=10), seed=0)

    energy = mirror_probe(ModelSystem(model, CFGrid.log_spaced(1)), f0=300.0)

    assert energy < NUMERIC_FLOOR_DB


# ================================
# Tests de Tiempo Real
# ================================

def test_rtf_bench_reports_positive_factor(tiny_spec):
    """Test de humo del banco de tiempo real."""
    result = rtf_bench(DCoNNear(tiny_spec, seed=0), n_frames=3)

    assert result.rtf > 0.0
    assert result.frame_ms == pytest.approx(25.6)
    assert result.hardware


def test_rtf_bench_without_frames(tiny_spec):
    """Test de n_frames = 0."""
    with pytest.raises(AnalysisError, match="no frames"):
        rtf_bench(DCoNNear(tiny_spec, seed=0), n_frames=0)
