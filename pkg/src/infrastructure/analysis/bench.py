"""
Real-Time Factor Bench
======================

Latencia de inferencia por frame de 512 muestras (25.6 ms a 20 kHz).

Cada frame lleva su contexto izquierdo y derecho, como en el
procesamiento por bloques; el tiempo es de reloj de pared, en un solo
hilo, sin contar la generación de la entrada.
"""

import logging
import platform
import time
from dataclasses import dataclass

import numpy as np

from src.domain.exceptions import AnalysisError
from src.domain.value_objects import DEFAULT_SAMPLE_RATE
from src.infrastructure.analysis.probes import input_channels
from src.infrastructure.nn import Module
from src.infrastructure.training.trainers import model_contexts

logger = logging.getLogger(__name__)

DEFAULT_FRAME_LEN = 512
DEFAULT_N_FRAMES = 100


@dataclass(frozen=True)
class BenchResult:
    """Tiempo medio por frame (ms), factor de tiempo real y hardware."""

    mean_ms: float
    rtf: float
    frame_ms: float
    n_frames: int
    hardware: str


def hardware_description() -> str:
    return f"{platform.machine()} {platform.processor() or 'cpu'} / python {platform.python_version()} / numpy {np.__version__}"


def rtf_bench(
    model: Module,
    frame_len: int = DEFAULT_FRAME_LEN,
    n_frames: int = DEFAULT_N_FRAMES,
    seed: int = 0,
    sample_rate: float = DEFAULT_SAMPLE_RATE,
) -> BenchResult:
    """
    Mide el forward medio por frame y RTF = mean_ms / duración del frame.

    Raises:
        AnalysisError: "no frames" si n_frames < 1
    """
    if n_frames < 1:
        raise AnalysisError("no frames", details={"n_frames": n_frames})

    left, right = model_contexts(model)
    rng = np.random.default_rng(seed)
    frames = rng.standard_normal((n_frames, input_channels(model), left + frame_len + right)) * 0.02

    elapsed = 0.0
    for frame in frames:
        start = time.perf_counter()
        model.forward(frame)
        elapsed += time.perf_counter() - start

    mean_ms = 1000.0 * elapsed / n_frames
    frame_ms = 1000.0 * frame_len / sample_rate
    result = BenchResult(mean_ms, mean_ms / frame_ms, frame_ms, n_frames, hardware_description())
    logger.info("rtf bench", extra={"mean_ms": mean_ms, "rtf": result.rtf, "n_frames": n_frames})
    return result
