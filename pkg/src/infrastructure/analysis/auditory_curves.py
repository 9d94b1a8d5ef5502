"""
Auditory Curves
===============

Procedimientos de evaluación de etapas auditivas con salida por CF:

- q_erb: nitidez CF/ERB de la respuesta a un clic de 100 µs
- excitation_pattern: RMS por CF y nivel para tonos puros
- rate_level_curve: tasa media 10–40 ms tras el inicio de un tono de 50 ms
- synchrony_level: magnitud de f_m en la tasa ante un tono AM de 400 ms
- rectified_potential_curve: RMS del potencial IHC sin DC, rectificado

Una etapa es cualquier objeto invocable audio → N_CF × T (o, para ANF,
lista de tres mapas) con atributos `grid` y `sample_rate`.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Protocol

import numpy as np

from src.domain.value_objects import DEFAULT_SAMPLE_RATE, AudioBuffer, CFGrid, HearingProfile
from src.infrastructure.analysis.metrics import q_erb_from_response
from src.infrastructure.auditory import (
    ANF_SCALE,
    BM_SCALE,
    IHC_SCALE,
    CochleaSurrogate,
    HairCellSurrogate,
    NerveSurrogate,
)
from src.infrastructure.dsp import am_tone, click, magnitude_spectrum, n_samples, tone
from src.infrastructure.nn import Module, ThreeBranchANF

FIBER_NAMES = ("hsr", "msr", "lsr")
RATE_LEVEL_DURATION_S = 0.050
RATE_LEVEL_RAMP_S = 0.0025
RATE_WINDOW_S = (0.010, 0.040)
SYNCHRONY_DURATION_S = 0.400
SYNCHRONY_WINDOW_S = (0.075, 0.375)


class AuditoryStage(Protocol):
    grid: CFGrid
    sample_rate: float

    def __call__(self, audio: np.ndarray) -> Any: ...


class SurrogateStage:
    """
    Cadena sustituta hasta la etapa pedida (cochlea, ihc o anf).

    Ejemplo:
        >>> stage = SurrogateStage("anf", CFGrid.log_spaced(21), make_profile("NH"))
        >>> hsr, msr, lsr = stage(audio)
    """

    def __init__(self, stage: str, grid: CFGrid, profile: HearingProfile,
                 sample_rate: float = DEFAULT_SAMPLE_RATE) -> None:
        self.stage = stage
        self.grid = grid
        self.sample_rate = sample_rate
        self.cochlea = CochleaSurrogate(grid, profile, sample_rate)
        self.hair_cell = HairCellSurrogate(sample_rate)
        self.nerve = NerveSurrogate(sample_rate)

    def __call__(self, audio: np.ndarray) -> Any:
        bm = self.cochlea.forward(audio)
        if self.stage == "cochlea":
            return bm
        ihc = self.hair_cell.forward(bm)
        if self.stage == "ihc":
            return ihc
        return self.nerve.forward(ihc)


class EmulatedStage:
    """
    Emulador entrenado como etapa, devuelto a unidades físicas.

    La entrada se escala como durante el entrenamiento (audio en Pa, BM·1e6
    o IHC·10) y la salida se divide por la escala del objetivo.
    """

    _OUTPUT_SCALE = {"cochlea": BM_SCALE, "ihc": IHC_SCALE, "anf": ANF_SCALE}

    def __init__(self, stage: str, model: Module, grid: CFGrid,
                 sample_rate: float = DEFAULT_SAMPLE_RATE, input_scale: float = 1.0) -> None:
        self.stage = stage
        self.model = model
        self.grid = grid
        self.sample_rate = sample_rate
        self.input_scale = input_scale

    def __call__(self, data: np.ndarray) -> Any:
        x = np.atleast_2d(np.asarray(data, dtype=np.float64)) * self.input_scale
        scale = self._OUTPUT_SCALE[self.stage]
        if isinstance(self.model, ThreeBranchANF):
            return [y / scale for y in self.model.forward(x, trim=False)]
        return self.model.forward(x, trim=False) / scale


# ================================
# Q_ERB y patrones de excitación
# ================================

def q_erb(stage: AuditoryStage, cf: float, click_level: float, duration_s: float = 0.05) -> float:
    """
    Q_ERB del canal de CF más cercana ante un clic de condensación de 100 µs.

    Raises:
        AnalysisError: Respuesta con espectro plano o nulo
    """
    stimulus = click(click_level, duration_s, sample_rate=stage.sample_rate)
    channel = stage.grid.nearest(cf)
    response = np.atleast_2d(stage(stimulus.samples))[channel]
    return q_erb_from_response(response, stage.sample_rate, float(stage.grid.center_freqs[channel]))


def excitation_pattern(
    stage: AuditoryStage,
    tone_freqs: Sequence[float] = (500.0, 1000.0, 2000.0),
    levels: Sequence[float] = tuple(range(10, 100, 10)),
    duration_s: float = 0.1,
) -> dict[float, np.ndarray]:
    """
    RMS por CF (filas) y nivel (columnas) para cada frecuencia de tono.

    Se descarta la primera mitad de la respuesta (transitorio de inicio).
    Un nivel de -inf equivale a silencio.
    """
    patterns: dict[float, np.ndarray] = {}
    for freq in tone_freqs:
        columns = []
        for level in levels:
            out = np.atleast_2d(stage(tone(freq, level, duration_s, stage.sample_rate).samples))
            steady = out[:, out.shape[1] // 2:]
            columns.append(np.sqrt(np.mean(steady ** 2, axis=1)))
        patterns[float(freq)] = np.stack(columns, axis=1)
    return patterns


# ================================
# Curvas de nervio auditivo
# ================================

@dataclass(frozen=True, eq=False)
class FiberCurves:
    """Una secuencia por tipo de fibra, alineada con `levels`."""

    levels: np.ndarray
    hsr: np.ndarray
    msr: np.ndarray
    lsr: np.ndarray

    def by_name(self) -> dict[str, np.ndarray]:
        return dict(zip(FIBER_NAMES, (self.hsr, self.msr, self.lsr), strict=True))


def _window(start_s: float, stop_s: float, sample_rate: float) -> slice:
    return slice(n_samples(start_s, sample_rate), n_samples(stop_s, sample_rate))


def rate_level_curve(
    anf_stage: AuditoryStage,
    cf: float = 4000.0,
    levels: Sequence[float] = tuple(range(0, 101, 10)),
) -> FiberCurves:
    """Tasa media en 10–40 ms de un tono de 50 ms con rampas de 2.5 ms en la CF."""
    fs = anf_stage.sample_rate
    channel = anf_stage.grid.nearest(cf)
    window = _window(*RATE_WINDOW_S, fs)
    rows = []
    for level in levels:
        stimulus = tone(cf, level, RATE_LEVEL_DURATION_S, fs, ramp_s=RATE_LEVEL_RAMP_S)
        fibers = anf_stage(stimulus.samples)
        rows.append([float(np.mean(f[channel, window])) for f in fibers])
    rates = np.array(rows).T
    return FiberCurves(np.asarray(levels, dtype=np.float64), *rates)


def synchrony_level(
    anf_stage: AuditoryStage,
    carrier: float = 4000.0,
    f_m: float = 100.0,
    levels: Sequence[float] = tuple(range(0, 101, 10)),
    depth: float = 1.0,
) -> FiberCurves:
    """
    Magnitud del bin f_m del espectro de la tasa (ventana 75–375 ms) ante un
    tono AM de 400 ms en la CF más cercana a la portadora.
    """
    fs = anf_stage.sample_rate
    channel = anf_stage.grid.nearest(carrier)
    window = _window(*SYNCHRONY_WINDOW_S, fs)
    rows = []
    for level in levels:
        stimulus = am_tone(carrier, f_m, level, SYNCHRONY_DURATION_S, depth=depth,
                           sample_rate=fs, ramp_s=RATE_LEVEL_RAMP_S)
        fibers = anf_stage(stimulus.samples)
        row = []
        for rate in fibers:
            spectrum = magnitude_spectrum(AudioBuffer(rate[channel, window], fs))
            row.append(float(spectrum.magnitudes[spectrum.nearest_bin(f_m)]))
        rows.append(row)
    magnitudes = np.array(rows).T
    return FiberCurves(np.asarray(levels, dtype=np.float64), *magnitudes)


def rectified_potential_curve(
    ihc_stage: AuditoryStage,
    freq: float = 4000.0,
    levels: Sequence[float] = tuple(range(0, 101, 10)),
    duration_s: float = 0.1,
) -> np.ndarray:
    """RMS del potencial IHC de la CF sin su componente DC y rectificado."""
    fs = ihc_stage.sample_rate
    channel = ihc_stage.grid.nearest(freq)
    steady = _window(duration_s / 5.0, duration_s, fs)
    values = []
    for level in levels:
        potential = np.atleast_2d(ihc_stage(tone(freq, level, duration_s, fs).samples))[channel, steady]
        ac = potential - np.mean(potential)
        values.append(float(np.sqrt(np.mean(np.maximum(ac, 0.0) ** 2))))
    return np.array(values)
