"""
Generate Corpus Use Case
========================

Escribe un corpus de escritorio: un WAV float por clip (más su versión
ruidosa si se pidió un rango de SNR) y un manifiesto CSV determinista.
"""

import logging
from pathlib import Path

from src.application.dto import CorpusRequestDTO, CorpusResultDTO
from src.application.use_cases.common import MANIFEST_COLUMNS, MANIFEST_NAME
from src.domain.interfaces import IAudioStore
from src.infrastructure.persistence import write_rows
from src.infrastructure.training import generate_corpus

logger = logging.getLogger(__name__)


class GenerateCorpusUseCase:
    """
    Caso de uso del comando gen-corpus.

    Ejemplo:
        >>> use_case = GenerateCorpusUseCase(SoundfileAudioStore())
        >>> result = use_case.execute(CorpusRequestDTO(count=4), run_dir)
    """

    def __init__(self, audio_store: IAudioStore) -> None:
        self._audio = audio_store

    def execute(self, request: CorpusRequestDTO, out_dir: Path) -> CorpusResultDTO:
        """
        Raises:
            InvalidSpecError: Parámetros del corpus inválidos
            PersistenceError: Directorio no escribible
        """
        directory = Path(out_dir) / "corpus"
        items = generate_corpus(
            count=request.count,
            duration_s=request.duration_s,
            seed=request.seed,
            sample_rate=request.sample_rate,
            snr_range=request.snr_range,
            level_db=request.level_db,
        )
        rows = []
        for item in items:
            clean_name = f"{item.name}.wav"
            self._audio.write(item.clean, directory / clean_name)
            noisy_name = ""
            if item.noisy is not None:
                noisy_name = f"{item.name}_noisy.wav"
                self._audio.write(item.noisy, directory / noisy_name)
            rows.append((item.name, item.kind, item.level_db, item.snr_db, clean_name, noisy_name))

        manifest = write_rows(directory / MANIFEST_NAME, MANIFEST_COLUMNS, rows)
        logger.info("corpus written", extra={"path": str(directory), "clips": len(items)})
        return CorpusResultDTO(directory=directory, manifest=manifest, count=len(items))
