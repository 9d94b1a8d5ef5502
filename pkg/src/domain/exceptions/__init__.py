# ================================
# Domain Exceptions
# ================================
# Excepciones específicas del dominio.
# Representan violaciones de invariantes de señales, formas y modelos.
# ================================

from .domain_exceptions import (
    AnalysisError,
    CheckpointFormatError,
    ConfigurationError,
    DomainException,
    InvalidSignalError,
    InvalidSpecError,
    PersistenceError,
    ResourceNotFoundError,
    ShapeError,
)

__all__ = [
    "DomainException",
    "ShapeError",
    "InvalidSignalError",
    "InvalidSpecError",
    "ConfigurationError",
    "AnalysisError",
    "CheckpointFormatError",
    "ResourceNotFoundError",
    "PersistenceError",
]
