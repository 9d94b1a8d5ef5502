"""
Tests Unitarios - Sustitutos Auditivos
======================================

Cóclea, célula ciliada interna, fibras del nervio auditivo, perfiles de
audición y el camino completo congelado.
"""

import numpy as np
import pytest

from src.domain.exceptions import ConfigurationError, ShapeError
from src.domain.value_objects import CFGrid, FeatureMap
from src.infrastructure.auditory import (
    FIBER_TYPES,
    CochleaSurrogate,
    HairCellSurrogate,
    NerveSurrogate,
    SurrogatePathway,
    an_population,
    cochlea_forward,
    erb_hz,
    ihc_forward,
    make_profile,
    population_response,
)
from src.infrastructure.auditory.cochlea import KNEE_PA, compress, compress_derivative
from src.infrastructure.auditory.hair_cell import V_MAX
from src.infrastructure.dsp import tone

pytestmark = pytest.mark.unit


# ================================
# Tests de Perfiles
# ================================

def test_nh_profile_is_normal(nh_profile):
    """Test del perfil normal."""
    assert nh_profile.is_normal
    assert nh_profile.fiber_weights == (13.0, 3.0, 3.0)


def test_slope_profile_loss_grows_above_one_khz():
    """Test de pérdida en pendiente desde 1 kHz hasta 8 kHz."""
    profile = make_profile("Slope35")

    gains = profile.ohc_gain_db(np.array([500.0, 1000.0, 8000.0, 12000.0]))

    assert gains.tolist() == pytest.approx([0.0, 0.0, 35.0, 35.0])
    assert profile.fiber_weights == (13.0, 3.0, 3.0)


def test_cs_profile_keeps_ohc_gain():
    """Test de sinaptopatía: sólo cambian los pesos de fibra."""
    profile = make_profile("CS-7,0,0")

    assert profile.fiber_weights == (7.0, 0.0, 0.0)
    assert np.all(profile.ohc_gain_db(np.array([1000.0, 8000.0])) == 0.0)


def test_unknown_profile_lists_known_names():
    """Test de perfil desconocido."""
    with pytest.raises(ConfigurationError) as exc_info:
        make_profile("Flat40")

    assert "NH" in exc_info.value.details["known_profiles"]


def test_profile_with_too_many_fibers_is_configuration_error():
    """Test de pesos por encima de NH expresados en el nombre."""
    with pytest.raises(ConfigurationError):
        make_profile("CS-20,3,3")


# ================================
# Tests de Etapas
# ================================

def test_erb_formula():
    """Test del ERB de Glasberg y Moore."""
    assert float(erb_hz(1000.0)) == pytest.approx(24.7 + 107.939)


def test_cochlea_channel_peaks_near_its_cf(small_grid, nh_profile):
    """Test que un tono excita más el canal de CF más cercana."""
    # Arrange
    cochlea = CochleaSurrogate(small_grid, nh_profile)
    freq = float(small_grid.center_freqs[2])

    # Act
    bm = cochlea.forward(tone(freq, 40.0, 0.1).samples)

    # Assert
    assert bm.shape == (5, 2000)
    assert int(np.argmax(np.sqrt(np.mean(bm[:, 1000:] ** 2, axis=1)))) == 2


def test_ohc_loss_lowers_basal_response(small_grid, nh_profile, hi_profile):
    """Test que la pérdida OHC atenúa los canales de CF alta."""
    audio = tone(float(small_grid.center_freqs[-2]), 40.0, 0.05).samples

    nh = CochleaSurrogate(small_grid, nh_profile).forward(audio)
    hi = CochleaSurrogate(small_grid, hi_profile).forward(audio)

    assert np.max(np.abs(hi[-2])) < np.max(np.abs(nh[-2]))
    assert np.allclose(hi[0], nh[0])


@pytest.mark.parametrize(
    "low_db, high_db, expected_db",
    [(0.0, 20.0, 20.0), (50.0, 70.0, 6.0), (70.0, 90.0, 6.0)],
    ids=["below-knee", "above-knee", "high-level"],
)
def test_cochlea_growth_at_cf(nh_profile, low_db, high_db, expected_db):
    """Test de crecimiento en la CF: 1 dB/dB bajo la rodilla, 0.3 dB/dB por encima."""
    # Arrange
    cochlea = CochleaSurrogate(CFGrid((1000.0,)), nh_profile)

    # Act
    levels = []
    for level in (low_db, high_db):
        bm = cochlea.forward(tone(1000.0, level, 0.1).samples)[0, 1000:]
        levels.append(20.0 * np.log10(np.sqrt(np.mean(bm ** 2))))

    # Assert
    assert levels[1] - levels[0] == pytest.approx(expected_db, abs=1.0)


def test_ihc_potential_is_non_positive_and_bounded(rng):
    """Test que el potencial IHC está en [−V_MAX, 0]."""
    bm = 1e-5 * rng.standard_normal((3, 500))

    ihc = HairCellSurrogate().forward(bm)

    assert np.all(ihc <= 0.0)
    assert np.all(ihc >= -V_MAX)


def test_fibers_rest_at_spontaneous_rate():
    """Test que sin estímulo cada fibra dispara a su tasa espontánea."""
    rates = NerveSurrogate().forward(np.zeros((2, 200)))

    for fiber, rate in zip(FIBER_TYPES, rates, strict=True):
        assert np.allclose(rate, fiber.spont)


def test_fiber_rates_stay_positive_under_drive(rng):
    """Test de tasas positivas con potenciales IHC arbitrarios."""
    ihc = -V_MAX * rng.uniform(0.0, 1.0, size=(2, 400))

    rates = NerveSurrogate().forward(ihc)

    assert all(np.all(rate > 0.0) for rate in rates)


def test_population_response_weights_fibers():
    """Test de r_f = H·hsr + M·msr + L·lsr y p = Σ_CF r_f."""
    hsr, msr, lsr = np.ones((2, 3)), 2 * np.ones((2, 3)), 3 * np.ones((2, 3))

    r_f, p = population_response(hsr, msr, lsr, (13.0, 3.0, 3.0))

    assert np.all(r_f == 13.0 + 6.0 + 9.0)
    assert np.all(p == 2 * 28.0)


def test_population_response_rejects_misaligned_maps():
    """Test de mapas de fibra con formas distintas."""
    with pytest.raises(ShapeError):
        an_population(
            FeatureMap(np.ones((2, 3))), FeatureMap(np.ones((2, 4))), FeatureMap(np.ones((2, 3))),
            (13.0, 3.0, 3.0),
        )


def test_stage_helpers_keep_sample_rate(small_grid, nh_profile):
    """Test de las funciones de etapa sobre FeatureMap."""
    bm = cochlea_forward(tone(1000.0, 60.0, 0.02), small_grid, nh_profile)

    ihc = ihc_forward(bm)

    assert ihc.channels == 5
    assert ihc.sample_rate == bm.sample_rate


# ================================
# Tests del Camino Completo
# ================================

def test_pathway_is_frozen_and_deterministic(small_grid, nh_profile):
    """Test que el camino sustituto es fijo y reproducible."""
    audio = tone(1000.0, 60.0, 0.02).samples
    path = SurrogatePathway(nh_profile, small_grid)

    first = path.forward(audio)
    second = SurrogatePathway(nh_profile, small_grid).forward(audio)

    assert path.frozen
    assert np.array_equal(first, second)
    assert path.fingerprint() == SurrogatePathway(nh_profile, small_grid).fingerprint()


def test_pathway_fingerprint_depends_on_profile(small_grid, nh_profile, hi_profile):
    """Test que perfiles distintos dan huellas distintas."""
    assert SurrogatePathway(nh_profile, small_grid).fingerprint() != \
        SurrogatePathway(hi_profile, small_grid).fingerprint()


# ================================
# Tests de Gradientes por Etapa
# ================================

def _directional_error(stage, x: np.ndarray, direction: np.ndarray, eps: float) -> float:
    """Error relativo entre la derivada direccional analítica y la de diferencias centrales."""
    first = stage.forward(x)
    is_list = isinstance(first, list)
    rng = np.random.default_rng(0)
    projections = [rng.standard_normal(o.shape) for o in (first if is_list else [first])]

    def loss(z: np.ndarray) -> float:
        out = stage.forward(z)
        return sum(float(np.sum(o * r)) for o, r in zip(out if is_list else [out], projections, strict=True))

    stage.forward(x)
    grad = stage.backward(projections if is_list else projections[0])
    analytic = float(np.sum(grad * direction))
    numeric = (loss(x + eps * direction) - loss(x - eps * direction)) / (2.0 * eps)
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric))


def test_cochlea_gradient_in_linear_regime(small_grid, hi_profile):
    """Test del adjunto del banco gammatone por debajo de la rodilla."""
    # Arrange
    rng = np.random.default_rng(0)
    cochlea = CochleaSurrogate(small_grid, hi_profile)
    audio = 1e-5 * rng.standard_normal(400)
    direction = 1e-5 * rng.standard_normal(audio.size)
    assert np.max(np.abs(cochlea.filterbank(audio))) < 0.5 * KNEE_PA

    # Act
    error = _directional_error(cochlea, audio, direction, eps=1e-3)

    # Assert
    assert error < 1e-4


def test_compression_derivative_away_from_knee():
    """Test de la derivada de la compresión, lejos de la rodilla."""
    u = KNEE_PA * np.linspace(-20.0, 20.0, 801)
    u = u[np.abs(np.abs(u) - KNEE_PA) > 1e-2 * KNEE_PA]
    h = 1e-6 * KNEE_PA

    numeric = (compress(u + h) - compress(u - h)) / (2.0 * h)

    assert np.max(np.abs(numeric - compress_derivative(u)) / np.abs(numeric)) < 1e-4


def test_ihc_gradient_away_from_rectifier_kink():
    """Test del gradiente de la IHC con perturbaciones lejos de bm = 0."""
    # Arrange: la dirección se anula donde |bm| es chico
    rng = np.random.default_rng(1)
    ihc = HairCellSurrogate()
    bm = 1e-6 * rng.standard_normal((3, 300))
    direction = 1e-6 * rng.standard_normal(bm.shape)
    direction[np.abs(bm) < 1e-8] = 0.0

    # Act
    error = _directional_error(ihc, bm, direction, eps=1e-5)

    # Assert
    assert error < 1e-4


def test_nerve_gradient_matches_central_differences():
    """Test del gradiente de las tres fibras con adaptación."""
    rng = np.random.default_rng(2)
    nerve = NerveSurrogate()
    potential = -V_MAX * rng.uniform(0.0, 0.5, size=(3, 300))
    direction = V_MAX * rng.standard_normal(potential.shape)

    error = _directional_error(nerve, potential, direction, eps=1e-6)

    assert error < 1e-4
