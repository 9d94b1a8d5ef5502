"""
Command DTOs
============

Data Transfer Objects de los comandos de la CLI.

Decisiones técnicas:
- Se usan dataclasses simples (no Pydantic) para independencia del parser
- La validación de cada sección se hace en la capa de presentación
- Los casos de uso reciben estos DTOs y un directorio de salida ya creado
"""

from dataclasses import dataclass, field
from pathlib import Path

from src.domain.entities import ArtifactReport, TrainingRun
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, TrainConfig


# ================================
# Requests
# ================================

@dataclass
class ModelRequestDTO:
    """
    Qué modelo construir o cargar.

    Atributos:
        kind: dconnear, autoencoder o preset
        preset: Nombre del preset publicado (kind == "preset")
        spec: Pares ModelSpec que reemplazan los valores de escritorio
        depth, upsampling, antialias, base_channels, kernel: Autoencoder
        checkpoint: Si existe, se carga en lugar de construir
        seed: Semilla de inicialización
    """
    kind: str = "dconnear"
    preset: str | None = None
    spec: dict[str, str] = field(default_factory=dict)
    depth: int = 4
    upsampling: str = "transposed"
    antialias: bool = False
    base_channels: int = 16
    kernel: int = 16
    checkpoint: Path | None = None
    seed: int = 0


@dataclass
class CorpusRequestDTO:
    count: int = 8
    duration_s: float = 0.5
    seed: int = 0
    sample_rate: float = DEFAULT_SAMPLE_RATE
    level_db: float = 70.0
    snr_range: tuple[float, float] | None = None


@dataclass
class TrainRequestDTO:
    """
    Entrenamiento de un emulador o de un procesador en lazo cerrado.

    Atributos:
        task: emulator, ha o se
        corpus: Directorio con manifest.csv
        stage: Etapa emulada (task == "emulator")
        profile: Perfil HI (ha) o perfil de la etapa emulada
        profile_file: Archivo de perfil; tiene prioridad sobre `profile`
        n_cf: Canales de la rejilla de CF
        window: Longitud del núcleo de cada frame
    """
    task: str
    corpus: Path
    train: TrainConfig
    model: ModelRequestDTO
    stage: str = "identity"
    profile: str = "NH"
    profile_file: Path | None = None
    n_cf: int = 21
    window: int = 256
    flatten_channels: bool = False


@dataclass
class ProbeRequestDTO:
    """
    Sondas de artefactos sobre un sistema.

    `system`: identity, dconnear, strided, checkpoint o baseline:<modo>.
    """
    system: str
    model: ModelRequestDTO
    probes: tuple[str, ...] = ("tone", "step")
    freq: float = 1000.0
    level: float = 70.0
    duration: float = 0.1
    step_length: int = 8192
    imaging_f0: float = 500.0
    aliasing_depth: int = 8
    channel: int | None = None
    pdf: bool = False


@dataclass
class MetricsRequestDTO:
    """
    NRMSE entre poblaciones NH y HI, sin procesar y procesadas.

    Sin checkpoint, la señal procesada es la original.
    """
    corpus: Path
    checkpoint: Path | None = None
    profile: str = "Slope35-7,0,0"
    profile_file: Path | None = None
    reference_profile: str = "NH"
    levels: tuple[float, ...] = (40.0, 50.0, 60.0, 70.0)
    n_cf: int = 21
    max_clips: int = 8
    curves: bool = False


@dataclass
class BenchRequestDTO:
    model: ModelRequestDTO
    frame_len: int = 512
    n_frames: int = 100
    seed: int = 0


# ================================
# Results
# ================================

@dataclass
class CorpusResultDTO:
    directory: Path
    manifest: Path
    count: int


@dataclass
class TrainResultDTO:
    checkpoint: Path
    log: Path
    run: TrainingRun


@dataclass
class ProbeResultDTO:
    """
    Atributos:
        reports: Reportes de texto escritos
        summary: CSV `probe,system,metric,value`
        metrics: Métricas escalares (clave "probe.metric")
        pdf: Resumen PDF si se pidió
    """
    reports: list[Path]
    summary: Path
    metrics: dict[str, float]
    artifacts: list[ArtifactReport] = field(default_factory=list)
    pdf: Path | None = None


@dataclass
class MetricsResultDTO:
    nrmse_csv: Path
    rows: list[tuple[float, float, float]]
    curves: list[Path] = field(default_factory=list)


@dataclass
class BenchResultDTO:
    report: Path
    csv: Path
    mean_ms: float
    rtf: float
    hardware: str
