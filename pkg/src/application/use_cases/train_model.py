"""
Train Model Use Case
====================

Despacha el comando train según `task`:

- emulator: un modelo aprende una etapa sustituta (identity, cochlea, ihc, anf)
- ha: procesador HA en lazo cerrado contra caminos sustitutos NH y HI
- se: procesador SE en lazo cerrado contra el camino NH

Escribe el checkpoint final y el log de entrenamiento en CSV.
"""

import logging
from pathlib import Path

from src.application.dto import TrainRequestDTO, TrainResultDTO
from src.application.use_cases.common import CorpusEntry, build_model, load_corpus, resolve_profile
from src.domain.entities import TrainingRun
from src.domain.exceptions import ConfigurationError
from src.domain.interfaces import IAudioStore, IWeightStore
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, CFGrid
from src.infrastructure.auditory import SurrogatePathway, make_profile
from src.infrastructure.nn import Module
from src.infrastructure.persistence import save_model, write_training_log_csv
from src.infrastructure.training import (
    StageTarget,
    calibrate_corpus,
    train_emulator,
    train_ha_closed_loop,
    train_se_closed_loop,
)

logger = logging.getLogger(__name__)

TASKS = ("emulator", "ha", "se")
CHECKPOINT_NAME = "model.weights"
LOG_NAME = "train_log.csv"


def _stage_channels(stage: str, n_cf: int, flatten: bool) -> tuple[int, int]:
    if stage == "identity":
        return 1, 1
    if stage == "cochlea":
        return 1, n_cf
    return (1, 1) if flatten else (n_cf, n_cf)


class TrainModelUseCase:
    """Caso de uso del comando train."""

    def __init__(self, weight_store: IWeightStore, audio_store: IAudioStore) -> None:
        self._weights = weight_store
        self._audio = audio_store

    def execute(self, request: TrainRequestDTO, out_dir: Path) -> TrainResultDTO:
        """
        Raises:
            ConfigurationError: Tarea desconocida o corpus sin pares ruidosos (se)
            ResourceNotFoundError: Corpus inexistente
        """
        if request.task not in TASKS:
            raise ConfigurationError(
                f"unknown task '{request.task}'", details={"valid_tasks": list(TASKS)}
            )
        corpus = load_corpus(request.corpus, self._audio)
        grid = CFGrid.log_spaced(request.n_cf)

        model: Module
        run: TrainingRun
        if request.task == "emulator":
            model, run = self._train_emulator(request, corpus, grid)
        elif request.task == "ha":
            model = build_model(request.model, weight_store=self._weights, passthrough=True)
            nh_path = SurrogatePathway(make_profile("NH"), grid)
            hi_path = SurrogatePathway(resolve_profile(request.profile, request.profile_file), grid)
            data = calibrate_corpus([entry.clean for entry in corpus], "ha")
            run = train_ha_closed_loop(model, nh_path, hi_path, data, request.train, request.window)
        else:
            pairs = [(entry.noisy, entry.clean) for entry in corpus if entry.noisy is not None]
            if len(pairs) != len(corpus):
                raise ConfigurationError("task se needs a corpus generated with an SNR range")
            model = build_model(request.model, weight_store=self._weights, passthrough=True)
            nh_path = SurrogatePathway(make_profile("NH"), grid)
            run = train_se_closed_loop(model, nh_path, pairs, request.train, request.window)

        out_dir = Path(out_dir)
        checkpoint = save_model(model, out_dir / CHECKPOINT_NAME, self._weights)
        run.checkpoint = str(checkpoint)
        log = write_training_log_csv(run, out_dir / LOG_NAME)
        logger.info("training finished", extra={
            "task": request.task, "epochs": run.epochs_executed, "best_val_loss": run.best_val_loss,
        })
        return TrainResultDTO(checkpoint=checkpoint, log=log, run=run)

    def _train_emulator(self, request: TrainRequestDTO, corpus: list[CorpusEntry],
                        grid: CFGrid) -> tuple[Module, TrainingRun]:
        c_in, c_out = _stage_channels(request.stage, len(grid), request.flatten_channels)
        model = build_model(request.model, c_in, c_out, weight_store=self._weights,
                            three_branch=request.stage == "anf")
        profile = resolve_profile(request.profile, request.profile_file)
        target = StageTarget(request.stage, grid, profile, corpus[0].clean.sample_rate if corpus else DEFAULT_SAMPLE_RATE)
        data = calibrate_corpus([entry.clean for entry in corpus], request.stage)
        run = train_emulator(model, target, data, request.train, request.window, request.flatten_channels)
        return model, run
