# ================================
# Infrastructure Persistence
# ================================
# Adapters de almacenamiento: WAV float, checkpoints con cabecera de
# texto, archivos key = value, CSV y reportes de artefactos.
# ================================

from .audio_store import WAV_SUBTYPE, SoundfileAudioStore
from .csv_export import (
    FLOAT_FORMAT,
    read_rows,
    write_excitation_csv,
    write_fiber_curves_csv,
    write_nrmse_csv,
    write_rows,
    write_spectrum_csv,
    write_training_log_csv,
)
from .model_io import build_from_checkpoint, load_model, save_model, to_checkpoint
from .report_writer import REPORT_HEADER, TextReportWriter, read_report_fields
from .text_config import (
    Sections,
    parse_config_text,
    parse_profile_text,
    read_config,
    read_model_config,
    read_profile,
    read_text,
    render_config,
    render_profile,
    write_model_config,
    write_text,
)
from .weight_store import MAGIC, TextHeaderWeightStore, parse_checkpoint, render_header

__all__ = [
    "WAV_SUBTYPE",
    "SoundfileAudioStore",
    "MAGIC",
    "TextHeaderWeightStore",
    "parse_checkpoint",
    "render_header",
    "to_checkpoint",
    "build_from_checkpoint",
    "save_model",
    "load_model",
    "Sections",
    "parse_config_text",
    "render_config",
    "read_config",
    "read_text",
    "write_text",
    "read_model_config",
    "write_model_config",
    "parse_profile_text",
    "render_profile",
    "read_profile",
    "FLOAT_FORMAT",
    "write_rows",
    "read_rows",
    "write_spectrum_csv",
    "write_fiber_curves_csv",
    "write_excitation_csv",
    "write_training_log_csv",
    "write_nrmse_csv",
    "REPORT_HEADER",
    "TextReportWriter",
    "read_report_fields",
]
