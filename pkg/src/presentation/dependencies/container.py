"""
Dependency Injection Container
==============================

Conecta las implementaciones concretas de infraestructura con los puertos
del dominio y construye los casos de uso de cada comando.

- Los adaptadores de E/S son singletons (lru_cache)
- Los casos de uso reciben los puertos, nunca las clases concretas
- En tests se reemplazan con `cache_clear()` o construyendo el caso de uso
  a mano con dobles de prueba

Ejemplo:
    >>> use_case = get_train_model_use_case()
    >>> result = use_case.execute(request, run_dir)
"""

from functools import lru_cache

from src.application.use_cases import (
    BenchModelUseCase,
    ComputeMetricsUseCase,
    GenerateCorpusUseCase,
    ProbeSystemUseCase,
    TrainModelUseCase,
)
from src.domain.interfaces import IAudioStore, IReportWriter, IWeightStore
from src.infrastructure.persistence import (
    SoundfileAudioStore,
    TextHeaderWeightStore,
    TextReportWriter,
)


# ================================
# Adaptadores
# ================================

@lru_cache
def get_audio_store() -> IAudioStore:
    return SoundfileAudioStore()


@lru_cache
def get_weight_store() -> IWeightStore:
    return TextHeaderWeightStore()


@lru_cache
def get_report_writer() -> IReportWriter:
    return TextReportWriter()


# ================================
# Casos de uso
# ================================

@lru_cache
def get_generate_corpus_use_case() -> GenerateCorpusUseCase:
    return GenerateCorpusUseCase(get_audio_store())


@lru_cache
def get_train_model_use_case() -> TrainModelUseCase:
    return TrainModelUseCase(get_weight_store(), get_audio_store())


@lru_cache
def get_probe_system_use_case() -> ProbeSystemUseCase:
    return ProbeSystemUseCase(get_weight_store(), get_report_writer())


@lru_cache
def get_compute_metrics_use_case() -> ComputeMetricsUseCase:
    return ComputeMetricsUseCase(get_weight_store(), get_audio_store())


@lru_cache
def get_bench_model_use_case() -> BenchModelUseCase:
    return BenchModelUseCase(get_weight_store())
