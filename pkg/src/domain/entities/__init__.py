# ================================
# Domain Entities
# ================================
# Objetos con identidad o estado mutable.
# ================================

from .artifact_report import (
    ENERGY_FLOOR_DB,
    THD_FLOOR_DB,
    ArtifactReport,
    StimulusDescriptor,
)
from .param_store import ParamStore
from .training_run import EpochRecord, TrainingRun

__all__ = [
    "ParamStore",
    "TrainingRun",
    "EpochRecord",
    "ArtifactReport",
    "StimulusDescriptor",
    "THD_FLOOR_DB",
    "ENERGY_FLOOR_DB",
]
