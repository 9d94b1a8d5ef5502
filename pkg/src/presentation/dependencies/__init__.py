# ================================
# Presentation Dependencies
# ================================
# Inyección de dependencias para los comandos de la CLI.
# ================================

from .container import (
    get_audio_store,
    get_bench_model_use_case,
    get_compute_metrics_use_case,
    get_generate_corpus_use_case,
    get_probe_system_use_case,
    get_report_writer,
    get_train_model_use_case,
    get_weight_store,
)

__all__ = [
    "get_audio_store",
    "get_weight_store",
    "get_report_writer",
    "get_generate_corpus_use_case",
    "get_train_model_use_case",
    "get_probe_system_use_case",
    "get_compute_metrics_use_case",
    "get_bench_model_use_case",
]
