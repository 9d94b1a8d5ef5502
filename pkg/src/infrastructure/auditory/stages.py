"""
Auditory Stages
===============

Operaciones sobre FeatureMap de cada etapa sustituta y la respuesta de
población del nervio auditivo:

    r_f(n, w) = H·hsr(n, w) + M·msr(n, w) + L·lsr(n, w)
    p(n)      = Σ_w r_f(n, w)
"""

import numpy as np

from src.domain.exceptions import ShapeError
from src.domain.value_objects import AudioBuffer, CFGrid, FeatureMap, HearingProfile
from src.infrastructure.auditory.cochlea import CochleaSurrogate
from src.infrastructure.auditory.hair_cell import HairCellSurrogate
from src.infrastructure.auditory.nerve import NerveSurrogate

Weights = tuple[float, float, float]


def cochlea_forward(audio: AudioBuffer, grid: CFGrid, profile: HearingProfile) -> FeatureMap:
    """Desplazamiento BM (m) por CF para una señal calibrada en Pa."""
    bm = CochleaSurrogate(grid, profile, audio.sample_rate).forward(audio.samples)
    return FeatureMap(bm, audio.sample_rate)


def ihc_forward(bm: FeatureMap) -> FeatureMap:
    """Potencial de receptor (V, no positivo) por CF."""
    return FeatureMap(HairCellSurrogate(bm.sample_rate).forward(bm.data), bm.sample_rate)


def anf_forward(ihc: FeatureMap) -> tuple[FeatureMap, FeatureMap, FeatureMap]:
    """Tasas de disparo (spikes/s) de fibras HSR, MSR y LSR."""
    hsr, msr, lsr = NerveSurrogate(ihc.sample_rate).forward(ihc.data)
    return (
        FeatureMap(hsr, ihc.sample_rate),
        FeatureMap(msr, ihc.sample_rate),
        FeatureMap(lsr, ihc.sample_rate),
    )


def population_response(
    hsr: np.ndarray, msr: np.ndarray, lsr: np.ndarray, weights: Weights
) -> tuple[np.ndarray, np.ndarray]:
    """Versión sobre arreglos de an_population: devuelve (r_f, p)."""
    if not hsr.shape == msr.shape == lsr.shape:
        raise ShapeError(
            "fiber maps must share one shape",
            details={"hsr": list(hsr.shape), "msr": list(msr.shape), "lsr": list(lsr.shape)},
        )
    h, m, low = weights
    r_f = h * hsr + m * msr + low * lsr
    return r_f, r_f.sum(axis=0)


def an_population(
    hsr: FeatureMap, msr: FeatureMap, lsr: FeatureMap, weights: Weights
) -> tuple[FeatureMap, np.ndarray]:
    """
    Respuesta AN ponderada y respuesta de población.

    Raises:
        ShapeError: Los tres mapas no están alineados
    """
    r_f, p = population_response(hsr.data, msr.data, lsr.data, weights)
    return FeatureMap(r_f, hsr.sample_rate), p
