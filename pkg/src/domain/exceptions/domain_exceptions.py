"""
Domain Exceptions
=================

Excepciones personalizadas del dominio.

Las excepciones del dominio:
- Representan violaciones de invariantes (formas, señales, especificaciones)
- Son independientes de la infraestructura numérica
- Contienen información útil para debugging en `details`
- Se traducen a códigos de salida en la capa de presentación (CLI)

Jerarquía de excepciones:
    DomainException (base)
    ├── ShapeError
    ├── InvalidSignalError
    ├── InvalidSpecError
    ├── ConfigurationError
    ├── AnalysisError
    ├── CheckpointFormatError
    ├── ResourceNotFoundError
    └── PersistenceError
"""

from typing import Any


class DomainException(Exception):
    """
    Excepción base para errores del dominio.

    Todas las excepciones del dominio heredan de esta clase,
    lo que permite capturar cualquier error de forma genérica.

    Atributos:
        message: Descripción del error
        code: Código de error para identificación programática
        details: Información adicional del error
    """

    def __init__(
        self,
        message: str,
        code: str = "DOMAIN_ERROR",
        details: dict[str, Any] | None = None,
    ) -> None:
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> dict[str, Any]:
        """Convierte la excepción a un diccionario para serialización."""
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }


class ShapeError(DomainException):
    """
    Error de forma: canales o longitudes incompatibles.

    Ejemplo:
        >>> raise ShapeError(
        ...     "channel mismatch",
        ...     details={"expected": 4, "got": 3}
        ... )
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="SHAPE_MISMATCH", details=details)


class InvalidSignalError(DomainException):
    """
    Señal inválida: vacía, silenciosa o con valores no finitos.
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="INVALID_SIGNAL", details=details)


class InvalidSpecError(DomainException):
    """
    Especificación de modelo o de parámetros inválida.

    `details["violations"]` lista las restricciones violadas.

    Ejemplo:
        >>> raise InvalidSpecError(
        ...     "invalid model spec",
        ...     details={"violations": ["M must be >= 1"]}
        ... )
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="INVALID_SPEC", details=details)


class ConfigurationError(DomainException):
    """
    Configuración inválida: claves desconocidas, tareas inexistentes,
    caminos auditivos no congelados, etc.
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="CONFIGURATION_ERROR", details=details)


class AnalysisError(DomainException):
    """
    Error de análisis: fundamental ausente, banda vacía, sin frames.
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="ANALYSIS_ERROR", details=details)


class CheckpointFormatError(DomainException):
    """
    Cabecera de checkpoint mal formada.

    Atributos:
        offset: Byte offset del primer campo inválido dentro del archivo
    """

    def __init__(
        self,
        message: str,
        offset: int,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.offset = offset
        merged = {"offset": offset, **(details or {})}
        super().__init__(message=message, code="CHECKPOINT_FORMAT", details=merged)


class ResourceNotFoundError(DomainException):
    """
    Recurso no encontrado (corpus, checkpoint, archivo de perfil).
    """

    def __init__(
        self,
        message: str = "Recurso no encontrado",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message=message, code="RESOURCE_NOT_FOUND", details=details)


class PersistenceError(DomainException):
    """
    Error de escritura o lectura en disco.
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="PERSISTENCE_ERROR", details=details)
