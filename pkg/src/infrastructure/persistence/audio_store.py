"""
Audio Store
===========

WAV mono en float de 32 bits vía soundfile; los valores se guardan en Pa
sin normalizar, de modo que la calibración sobrevive a la escritura.
"""

from pathlib import Path

import numpy as np
import soundfile as sf

from src.domain.exceptions import InvalidSignalError, PersistenceError, ResourceNotFoundError
from src.domain.interfaces import IAudioStore
from src.domain.value_objects import AudioBuffer

WAV_SUBTYPE = "FLOAT"


class SoundfileAudioStore(IAudioStore):
    """Adapter de IAudioStore sobre soundfile."""

    def write(self, buffer: AudioBuffer, path: Path) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            sf.write(str(path), buffer.samples.astype(np.float32), int(round(buffer.sample_rate)),
                     subtype=WAV_SUBTYPE)
        except (OSError, RuntimeError) as e:
            raise PersistenceError(f"cannot write audio: {e}", details={"path": str(path)})
        return path

    def read(self, path: Path) -> AudioBuffer:
        """
        Raises:
            ResourceNotFoundError: Archivo inexistente
            InvalidSignalError: Archivo con más de un canal
        """
        path = Path(path)
        if not path.is_file():
            raise ResourceNotFoundError(f"audio file not found: {path}", details={"path": str(path)})
        try:
            data, rate = sf.read(str(path), dtype="float64", always_2d=True)
        except RuntimeError as e:
            raise PersistenceError(f"cannot read audio: {e}", details={"path": str(path)})
        if data.shape[1] != 1:
            raise InvalidSignalError("expected mono audio", details={"channels": int(data.shape[1])})
        return AudioBuffer(data[:, 0], float(rate))
