# ================================
# Application Use Cases
# ================================
# Un caso de uso por comando de la CLI. Cada uno recibe su DTO
# de solicitud y el directorio de la corrida, y devuelve un DTO
# de resultado con las rutas escritas.
# ================================

from .bench_model import BenchModelUseCase
from .compute_metrics import ComputeMetricsUseCase
from .generate_corpus import GenerateCorpusUseCase
from .probe_system import PROBES, ProbeSystemUseCase
from .train_model import TASKS, TrainModelUseCase

__all__ = [
    "GenerateCorpusUseCase",
    "TrainModelUseCase",
    "ProbeSystemUseCase",
    "ComputeMetricsUseCase",
    "BenchModelUseCase",
    "TASKS",
    "PROBES",
]
