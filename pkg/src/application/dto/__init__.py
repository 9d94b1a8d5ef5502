# ================================
# Application DTOs
# ================================
# Data Transfer Objects: solicitudes y resultados de cada comando.
#
# Los DTOs son diferentes de las entidades:
# - No tienen comportamiento ni reglas de negocio
# - Son simples contenedores de datos
# - Se validan con Pydantic en la capa de presentación
# ================================

from .command_dtos import (
    BenchRequestDTO,
    BenchResultDTO,
    CorpusRequestDTO,
    CorpusResultDTO,
    MetricsRequestDTO,
    MetricsResultDTO,
    ModelRequestDTO,
    ProbeRequestDTO,
    ProbeResultDTO,
    TrainRequestDTO,
    TrainResultDTO,
)

__all__ = [
    # Requests
    "ModelRequestDTO",
    "CorpusRequestDTO",
    "TrainRequestDTO",
    "ProbeRequestDTO",
    "MetricsRequestDTO",
    "BenchRequestDTO",
    # Results
    "CorpusResultDTO",
    "TrainResultDTO",
    "ProbeResultDTO",
    "MetricsResultDTO",
    "BenchResultDTO",
]
