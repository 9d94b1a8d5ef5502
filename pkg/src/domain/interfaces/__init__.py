# ================================
# Domain Interfaces (Ports)
# ================================
# Contratos que la infraestructura implementa.
# ================================

from .auditory_pathway_interface import IAuditoryPathway
from .storage_interfaces import Checkpoint, IAudioStore, IReportWriter, IWeightStore

__all__ = [
    "IAuditoryPathway",
    "IWeightStore",
    "IAudioStore",
    "IReportWriter",
    "Checkpoint",
]
