"""
Compute Metrics Use Case
========================

NRMSE entre la población AN de referencia (NH) y la del perfil HI, sin
procesar y tras un procesador HA, a varios niveles de presentación.

Con `curves`, exporta además los patrones de excitación de la cóclea y
las curvas tasa-nivel y sincronía-nivel del ANF sustituto del perfil.
"""

import logging
from pathlib import Path

import numpy as np

from src.application.dto import MetricsRequestDTO, MetricsResultDTO, ModelRequestDTO
from src.application.use_cases.common import CorpusEntry, build_model, load_corpus, resolve_profile
from src.domain.exceptions import ConfigurationError
from src.domain.interfaces import IAudioStore, IWeightStore
from src.domain.value_objects import CFGrid, HearingProfile
from src.infrastructure.analysis import (
    ModelSystem,
    SurrogateStage,
    excitation_pattern,
    nrmse,
    rate_level_curve,
    synchrony_level,
)
from src.infrastructure.auditory import SurrogatePathway, make_profile
from src.infrastructure.dsp import scale_to_spl
from src.infrastructure.persistence import (
    write_excitation_csv,
    write_fiber_curves_csv,
    write_nrmse_csv,
)

logger = logging.getLogger(__name__)

NRMSE_NAME = "nrmse.csv"
EXCITATION_LEVELS = tuple(float(level) for level in range(10, 100, 10))


class ComputeMetricsUseCase:
    """Caso de uso del comando metrics."""

    def __init__(self, weight_store: IWeightStore, audio_store: IAudioStore) -> None:
        self._weights = weight_store
        self._audio = audio_store

    def execute(self, request: MetricsRequestDTO, out_dir: Path) -> MetricsResultDTO:
        """
        Raises:
            ConfigurationError: Corpus vacío
            ResourceNotFoundError: Corpus o checkpoint inexistente
            AnalysisError: Población de referencia nula
        """
        corpus = load_corpus(request.corpus, self._audio)[: request.max_clips]
        if not corpus:
            raise ConfigurationError("metrics needs at least one clip", details={"corpus": str(request.corpus)})
        sample_rate = corpus[0].clean.sample_rate
        grid = CFGrid.log_spaced(request.n_cf)
        profile = resolve_profile(request.profile, request.profile_file)
        reference = SurrogatePathway(make_profile(request.reference_profile), grid, sample_rate)
        impaired = SurrogatePathway(profile, grid, sample_rate)

        processor = None
        if request.checkpoint is not None:
            model = build_model(ModelRequestDTO(checkpoint=request.checkpoint), weight_store=self._weights)
            processor = ModelSystem(model)

        rows = [
            (float(level), *self._level_nrmse(corpus, level, reference, impaired, processor))
            for level in request.levels
        ]
        out_dir = Path(out_dir)
        path = write_nrmse_csv(rows, out_dir / NRMSE_NAME)
        curves = self._write_curves(profile, grid, sample_rate, out_dir) if request.curves else []
        logger.info("metrics finished", extra={"profile": profile.name, "clips": len(corpus)})
        return MetricsResultDTO(nrmse_csv=path, rows=rows, curves=curves)

    @staticmethod
    def _level_nrmse(
        corpus: list[CorpusEntry],
        level: float,
        reference: SurrogatePathway,
        impaired: SurrogatePathway,
        processor: ModelSystem | None,
    ) -> tuple[float, float]:
        unprocessed, processed = [], []
        for entry in corpus:
            clip = scale_to_spl(entry.clean, level).samples
            p_ref = reference.respond(clip).p
            p_hi = impaired.respond(clip).p
            unprocessed.append(nrmse(p_ref, p_hi))
            if processor is None:
                processed.append(unprocessed[-1])
            else:
                aided = processor(clip)[0]
                processed.append(nrmse(p_ref, impaired.respond(aided).p))
        return float(np.mean(unprocessed)), float(np.mean(processed))

    @staticmethod
    def _write_curves(profile: HearingProfile, grid: CFGrid, sample_rate: float, out_dir: Path) -> list[Path]:
        cochlea = SurrogateStage("cochlea", grid, profile, sample_rate)
        anf = SurrogateStage("anf", grid, profile, sample_rate)
        patterns = excitation_pattern(cochlea, levels=EXCITATION_LEVELS)
        rates = rate_level_curve(anf)
        sync = synchrony_level(anf)
        return [
            write_excitation_csv(patterns, EXCITATION_LEVELS, grid, out_dir / "excitation.csv"),
            write_fiber_curves_csv(rates.levels, rates.by_name(), out_dir / "rate_level.csv"),
            write_fiber_curves_csv(sync.levels, sync.by_name(), out_dir / "synchrony_level.csv"),
        ]
