"""
Artifact Report Writer
======================

Formato de texto plano versionado:

    # aliasfree-artifact-report v1
    id = 6f1c...
    system = dconnear
    stimulus.kind = tone
    ...
    thd_db = -160
    band.0-500 = -300

Una clave por línea, orden fijo; apto para comparar corridas con grep.
"""

from pathlib import Path

from src.domain.entities import ArtifactReport
from src.domain.interfaces import IReportWriter
from src.infrastructure.persistence.csv_export import FLOAT_FORMAT
from src.infrastructure.persistence.text_config import parse_config_text, read_text, write_text

REPORT_HEADER = "# aliasfree-artifact-report v1"


def _num(value: float) -> str:
    return FLOAT_FORMAT % value


class TextReportWriter(IReportWriter):
    """Adapter de IReportWriter en el formato de texto versionado."""

    def render(self, report: ArtifactReport) -> str:
        stimulus = report.stimulus
        lines = [
            REPORT_HEADER,
            f"id = {report.id}",
            f"system = {report.system}",
            f"stimulus.kind = {stimulus.kind}",
            f"stimulus.freq_hz = {_num(stimulus.freq_hz)}",
            f"stimulus.level_db = {_num(stimulus.level_db)}",
            f"stimulus.duration_s = {_num(stimulus.duration_s)}",
            f"bins = {len(report.spectrum)}",
            f"resolution_hz = {_num(report.spectrum.resolution)}",
        ]
        if report.thd_db is not None:
            lines.append(f"thd_db = {_num(report.thd_db)}")
            lines.append(f"thd_floor = {str(report.thd_floor).lower()}")
        lines += [f"band.{band} = {_num(db)}" for band, db in sorted(report.band_energies.items())]
        if report.peaks_hz:
            lines.append("peaks_hz = " + ", ".join(_num(f) for f in report.peaks_hz))
        lines += [f"note.{i} = {note}" for i, note in enumerate(report.notes)]
        return "\n".join(lines) + "\n"

    def write(self, report: ArtifactReport, path: Path) -> Path:
        return write_text(self.render(report), path)


def read_report_fields(path: Path) -> dict[str, str]:
    """Pares clave-valor de un reporte escrito por TextReportWriter."""
    return parse_config_text(read_text(path), str(path)).get("", {})
