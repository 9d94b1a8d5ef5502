# ================================
# Infrastructure Layer
# ================================
# Implementaciones concretas: motores numéricos y adaptadores de E/S.
#
# Componentes:
# - config: Settings (pydantic-settings)
# - logging: Configuración de logging estructurado
# - dsp: Núcleo de señales (calibración, segmentación, espectros, FIR)
# - nn: Capas, modelos y gradientes manuales
# - auditory: Sustitutos de cóclea, IHC y ANF; caminos auditivos
# - training: Pérdidas, Adam, planificador, arneses de entrenamiento
# - analysis: Métricas y sondas de artefactos
# - persistence: WAV, checkpoints, CSV, reportes, perfiles
# - pdf: Resumen PDF de sondas (ReportLab)
# ================================
