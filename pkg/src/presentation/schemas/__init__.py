# ================================
# Presentation Schemas
# ================================
# Schemas Pydantic para validar las secciones del archivo de
# configuración. Estos schemas son diferentes de los DTOs de aplicación.
# ================================

from .config_schemas import (
    SECTION_MODELS,
    BenchSection,
    ConfigSection,
    CorpusSection,
    MetricsSection,
    ModelSection,
    ProbeSection,
    RunSection,
    TrainSection,
    format_value,
)

__all__ = [
    "ConfigSection",
    "RunSection",
    "ModelSection",
    "CorpusSection",
    "TrainSection",
    "ProbeSection",
    "MetricsSection",
    "BenchSection",
    "SECTION_MODELS",
    "format_value",
]
