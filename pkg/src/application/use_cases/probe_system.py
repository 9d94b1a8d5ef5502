"""
Probe System Use Case
=====================

Corre las sondas pedidas sobre un sistema y escribe:

- `<probe>.report`: ArtifactReport en texto versionado
- `<probe>_spectrum.csv`: espectro `freq_hz,magnitude_db`
- `probe_summary.csv`: una fila `probe,system,metric,value` por métrica
- `probe_summary.pdf` si se pidió

Sistemas: identity, dconnear (aleatorio, semilla fija), baseline:<modo>
(autoencoder aleatorio), strided (pila de decimaciones ×2) y checkpoint.
"""

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np

from src.application.dto import ModelRequestDTO, ProbeRequestDTO, ProbeResultDTO
from src.application.use_cases.common import build_model
from src.domain.entities import ArtifactReport
from src.domain.exceptions import ConfigurationError
from src.domain.interfaces import IReportWriter, IWeightStore
from src.domain.value_objects import CFGrid
from src.infrastructure.analysis import (
    ModelSystem,
    aliasing_probe,
    imaging_probe,
    mirror_probe,
    step_probe,
    tone_probe,
)
from src.infrastructure.nn import AutoencoderBaseline, Module, build_strided_stack
from src.infrastructure.pdf import write_probe_summary
from src.infrastructure.persistence import write_rows, write_spectrum_csv

logger = logging.getLogger(__name__)

PROBES = ("tone", "step", "aliasing", "imaging")
SUMMARY_NAME = "probe_summary.csv"
PDF_NAME = "probe_summary.pdf"


def _identity(audio: np.ndarray) -> np.ndarray:
    return np.asarray(audio, dtype=np.float64)


def resolve_system(
    request: ProbeRequestDTO, weight_store: IWeightStore
) -> tuple[str, Module | None, Callable[[np.ndarray], Any]]:
    """
    (nombre, modelo o None, sistema onda → salida).

    Raises:
        ConfigurationError: Sistema desconocido o checkpoint ausente
    """
    system = request.system
    if system == "identity":
        return system, None, _identity
    if system == "strided":
        stack = build_strided_stack(request.aliasing_depth, request.model.antialias)
        return system, stack, ModelSystem(stack)
    if system == "checkpoint" and request.model.checkpoint is None:
        raise ConfigurationError("system = checkpoint needs model.checkpoint")

    model_request = request.model
    if system.startswith("baseline:"):
        mode = system.split(":", 1)[1]
        model_request = ModelRequestDTO(**{**vars(request.model), "kind": "autoencoder", "upsampling": mode})
    elif system not in ("dconnear", "checkpoint"):
        raise ConfigurationError(
            f"unknown system '{system}'",
            details={"known_systems": ["identity", "dconnear", "strided", "checkpoint",
                                       "baseline:transposed", "baseline:subpixel", "baseline:nearest"]},
        )
    model = build_model(model_request, weight_store=weight_store)
    grid = _output_grid(model)
    return system, model, ModelSystem(model, grid)


def _output_grid(model: Module) -> CFGrid | None:
    spec = getattr(model, "spec", None) or getattr(model, "shared_spec", None)
    if spec is None or spec.c_out == 1:
        return None
    return CFGrid.log_spaced(spec.c_out)


class ProbeSystemUseCase:
    """Caso de uso del comando probe."""

    def __init__(self, weight_store: IWeightStore, report_writer: IReportWriter) -> None:
        self._weights = weight_store
        self._writer = report_writer

    def execute(self, request: ProbeRequestDTO, out_dir: Path) -> ProbeResultDTO:
        """
        Raises:
            ConfigurationError: Sonda desconocida o no aplicable al sistema
            AnalysisError: Sin fundamental, banda vacía, etc.
        """
        unknown = sorted(set(request.probes) - set(PROBES))
        if unknown:
            raise ConfigurationError("unknown probes", details={"unknown": unknown, "valid_probes": list(PROBES)})
        out_dir = Path(out_dir)
        name, model, system = resolve_system(request, self._weights)

        artifacts: list[tuple[str, ArtifactReport]] = []
        metrics: dict[str, float] = {}
        for probe in request.probes:
            if probe == "tone":
                report = tone_probe(system, request.freq, request.level, request.duration,
                                    name=name, channel=request.channel)
                artifacts.append((probe, report))
                assert report.thd_db is not None
                metrics["tone.thd_db"] = report.thd_db
                metrics["tone.sub500_db"] = report.band_energies["0-500"]
            elif probe == "step":
                report = step_probe(system, request.level, request.step_length, name=name,
                                    channel=request.channel)
                artifacts.append((probe, report))
                metrics["step.peaks"] = float(len(report.peaks_hz))
            elif probe == "aliasing":
                encoder = self._encoder(name, model)
                report, sub500 = aliasing_probe(encoder, request.freq, request.level, name=name)
                artifacts.append((probe, report))
                metrics["aliasing.sub500_db"] = sub500
            else:
                metrics["imaging.mirror_db"] = self._imaging(request, model, system)

        reports = []
        for probe, report in artifacts:
            reports.append(self._writer.write(report, out_dir / f"{probe}.report"))
            write_spectrum_csv(report.spectrum, out_dir / f"{probe}_spectrum.csv")
        summary = write_rows(
            out_dir / SUMMARY_NAME,
            ("probe", "system", "metric", "value"),
            ((key.split(".")[0], name, key.split(".")[1], value) for key, value in metrics.items()),
        )
        pdf = None
        if request.pdf:
            pdf = write_probe_summary([report for _, report in artifacts], out_dir / PDF_NAME,
                                      title=f"Probe summary: {name}")
        logger.info("probes finished", extra={"system": name, "probes": list(request.probes)})
        return ProbeResultDTO(reports=reports, summary=summary, metrics=metrics,
                              artifacts=[report for _, report in artifacts], pdf=pdf)

    @staticmethod
    def _encoder(name: str, model: Module | None) -> Module:
        if isinstance(model, AutoencoderBaseline):
            return model.encoder
        if name == "strided" and model is not None:
            return model
        raise ConfigurationError("aliasing probe needs a strided or baseline system",
                                 details={"system": name})

    @staticmethod
    def _imaging(request: ProbeRequestDTO, model: Module | None,
                 system: Callable[[np.ndarray], Any]) -> float:
        if isinstance(model, AutoencoderBaseline):
            return imaging_probe(model.decoder, f0=request.imaging_f0, level=request.level)
        return mirror_probe(system, f0=request.imaging_f0, level=request.level, channel=request.channel)
