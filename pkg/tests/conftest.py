"""
Pytest Configuration
====================

Fixtures y configuración compartida para tests.
"""

import logging
from pathlib import Path

import numpy as np
import pytest

from src.domain.value_objects import CFGrid, HearingProfile, ModelSpec
from src.infrastructure.auditory import make_profile
from src.infrastructure.config import get_settings
from src.presentation.dependencies import container


# ================================
# Process Fixtures
# ================================

@pytest.fixture(autouse=True)
def fresh_singletons(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    """Settings y contenedor limpios; la raíz de salida apunta a tmp_path."""
    monkeypatch.setenv("ALIASFREE_OUT", str(tmp_path / "runs"))
    monkeypatch.setenv("ALIASFREE_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    for name in dir(container):
        getter = getattr(container, name)
        if name.startswith("get_") and hasattr(getter, "cache_clear"):
            getter.cache_clear()
    yield
    get_settings.cache_clear()
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_aliasfree", False)]:
        root.removeHandler(handler)


@pytest.fixture
def rng() -> np.random.Generator:
    """Generador con semilla fija."""
    return np.random.default_rng(1234)


# ================================
# Domain Fixtures
# ================================

@pytest.fixture
def small_grid() -> CFGrid:
    """Rejilla de 5 CFs para tests rápidos."""
    return CFGrid.log_spaced(5)


@pytest.fixture
def nh_profile() -> HearingProfile:
    """Perfil de audición normal."""
    return make_profile("NH")


@pytest.fixture
def hi_profile() -> HearingProfile:
    """Pérdida en pendiente con HSR reducidas y sin MSR ni LSR."""
    return make_profile("Slope35-7,0,0")


@pytest.fixture
def tiny_spec() -> ModelSpec:
    """dCoNNear mínimo: 2 bloques con historia y futuro."""
    return ModelSpec(
        blocks_per_repeat=2,
        repeats=1,
        history_taps=3,
        future_taps=2,
        hidden=4,
        c_in=1,
        c_out=1,
    )


# ================================
# Run Fixtures
# ================================

@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    """Directorio de salida vacío para casos de uso."""
    path = tmp_path / "out"
    path.mkdir()
    return path
