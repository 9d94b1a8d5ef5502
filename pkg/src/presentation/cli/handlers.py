"""
Command Handlers
================

Un manejador por subcomando: convierte las secciones validadas en el DTO
del caso de uso, lo ejecuta en el directorio de la corrida y devuelve las
líneas a imprimir en stdout.
"""

from collections.abc import Callable
from pathlib import Path
from typing import cast

from src.application.dto import (
    BenchRequestDTO,
    CorpusRequestDTO,
    MetricsRequestDTO,
    ModelRequestDTO,
    ProbeRequestDTO,
    TrainRequestDTO,
)
from src.domain.value_objects import TrainConfig
from src.presentation.cli.run_config import ResolvedConfig
from src.presentation.dependencies import (
    get_bench_model_use_case,
    get_compute_metrics_use_case,
    get_generate_corpus_use_case,
    get_probe_system_use_case,
    get_train_model_use_case,
)
from src.presentation.schemas import (
    BenchSection,
    CorpusSection,
    MetricsSection,
    ModelSection,
    ProbeSection,
    TrainSection,
)

Handler = Callable[[ResolvedConfig, Path], list[str]]


def model_request(config: ResolvedConfig) -> ModelRequestDTO:
    section = cast(ModelSection, config.section("model"))
    return ModelRequestDTO(
        kind=section.kind,
        preset=section.preset,
        spec=dict(config.spec),
        depth=section.depth,
        upsampling=section.upsampling,
        antialias=section.antialias,
        base_channels=section.base_channels,
        kernel=section.kernel,
        checkpoint=section.checkpoint,
        seed=config.seed,
    )


def handle_gen_corpus(config: ResolvedConfig, run_dir: Path) -> list[str]:
    section = cast(CorpusSection, config.section("corpus"))
    request = CorpusRequestDTO(
        count=section.count,
        duration_s=section.duration_s,
        seed=config.seed,
        sample_rate=section.sample_rate,
        level_db=section.level_db,
        snr_range=section.snr_range,
    )
    result = get_generate_corpus_use_case().execute(request, run_dir)
    return [f"corpus = {result.directory}", f"clips = {result.count}"]


def handle_train(config: ResolvedConfig, run_dir: Path) -> list[str]:
    section = cast(TrainSection, config.section("train"))
    request = TrainRequestDTO(
        task=section.task,
        corpus=section.corpus,
        train=TrainConfig(
            lr=section.lr,
            epochs=section.epochs,
            batch=section.batch,
            patience=section.patience,
            seed=config.seed,
            alpha=section.alpha,
            beta=section.beta,
            val_fraction=section.val_fraction,
        ),
        model=model_request(config),
        stage=section.stage,
        profile=section.profile,
        profile_file=section.profile_file,
        n_cf=section.n_cf,
        window=section.window,
        flatten_channels=section.flatten_channels,
    )
    result = get_train_model_use_case().execute(request, run_dir)
    return [
        f"checkpoint = {result.checkpoint}",
        f"log = {result.log}",
        f"best_val_loss = {result.run.best_val_loss:.6g}",
    ]


def handle_probe(config: ResolvedConfig, run_dir: Path) -> list[str]:
    section = cast(ProbeSection, config.section("probe"))
    request = ProbeRequestDTO(
        system=section.system,
        model=model_request(config),
        probes=tuple(section.probes),
        freq=section.freq,
        level=section.level,
        duration=section.duration,
        step_length=section.step_length,
        imaging_f0=section.imaging_f0,
        aliasing_depth=section.aliasing_depth,
        channel=section.channel,
        pdf=section.pdf,
    )
    result = get_probe_system_use_case().execute(request, run_dir)
    lines = [f"{key} = {value:.6g}" for key, value in result.metrics.items()]
    lines.append(f"summary = {result.summary}")
    if result.pdf is not None:
        lines.append(f"pdf = {result.pdf}")
    return lines


def handle_metrics(config: ResolvedConfig, run_dir: Path) -> list[str]:
    section = cast(MetricsSection, config.section("metrics"))
    request = MetricsRequestDTO(
        corpus=section.corpus,
        checkpoint=section.checkpoint,
        profile=section.profile,
        profile_file=section.profile_file,
        reference_profile=section.reference_profile,
        levels=tuple(section.levels),
        n_cf=section.n_cf,
        max_clips=section.max_clips,
        curves=section.curves,
    )
    result = get_compute_metrics_use_case().execute(request, run_dir)
    lines = [f"level {level:g} dB: unprocessed {un:.4g}% processed {pr:.4g}%" for level, un, pr in result.rows]
    lines.append(f"nrmse = {result.nrmse_csv}")
    return lines


def handle_bench(config: ResolvedConfig, run_dir: Path) -> list[str]:
    section = cast(BenchSection, config.section("bench"))
    request = BenchRequestDTO(
        model=model_request(config),
        frame_len=section.frame_len,
        n_frames=section.n_frames,
        seed=config.seed,
    )
    result = get_bench_model_use_case().execute(request, run_dir)
    return [f"mean_ms = {result.mean_ms:.4g}", f"rtf = {result.rtf:.4g}", f"report = {result.report}"]


HANDLERS: dict[str, Handler] = {
    "gen-corpus": handle_gen_corpus,
    "train": handle_train,
    "probe": handle_probe,
    "metrics": handle_metrics,
    "bench": handle_bench,
}
