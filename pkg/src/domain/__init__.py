# ================================
# Domain Layer
# ================================
# Tipos y reglas del dominio: señales, especificaciones de modelos,
# perfiles de audición, reportes de artefactos.
# Única dependencia externa permitida: numpy (arreglos).
#
# Componentes:
# - entities: ParamStore, TrainingRun, ArtifactReport
# - value_objects: AudioBuffer, Spectrum, Frame, FeatureMap, CFGrid, ...
# - exceptions: Excepciones del dominio
# - interfaces: Contratos (Ports) para inversión de dependencias
# ================================
