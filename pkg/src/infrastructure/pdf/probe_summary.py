"""
Probe Summary PDF
=================

Resumen de una corrida de sondas en PDF usando ReportLab Platypus.

Por cada reporte: título del sistema, tabla del estímulo, tabla de THD y
energías por banda, y la lista de picos espectrales. El PDF se arma en
memoria (BytesIO) y se escribe de una sola vez.
"""

from collections.abc import Sequence
from functools import lru_cache
from io import BytesIO
from pathlib import Path
from typing import Any

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import mm
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from src.domain.entities import ArtifactReport
from src.domain.exceptions import PersistenceError

MAX_LISTED_PEAKS = 24


@lru_cache(maxsize=1)
def _styles() -> dict[str, ParagraphStyle]:
    """Estilos de párrafo, creados una sola vez por proceso."""
    base = getSampleStyleSheet()
    return {
        "title": ParagraphStyle(
            "SummaryTitle",
            parent=base["Heading1"],
            fontName="Times-Bold",
            fontSize=14,
            alignment=TA_CENTER,
            spaceAfter=6,
            leading=17,
        ),
        "heading": ParagraphStyle(
            "SummaryHeading",
            parent=base["Heading2"],
            fontName="Times-Bold",
            fontSize=10,
            alignment=TA_LEFT,
            spaceBefore=8,
            spaceAfter=4,
            leading=12,
        ),
        "body": ParagraphStyle(
            "SummaryBody",
            parent=base["Normal"],
            fontName="Times-Roman",
            fontSize=9,
            leading=12,
        ),
    }


_TABLE_STYLE = TableStyle([
    ("FONTNAME", (0, 0), (-1, -1), "Times-Roman"),
    ("FONTNAME", (0, 0), (-1, 0), "Times-Bold"),
    ("FONTSIZE", (0, 0), (-1, -1), 9),
    ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
    ("ALIGN", (0, 0), (-1, -1), "LEFT"),
    ("LINEBELOW", (0, 0), (-1, -1), 0.25, colors.lightgrey),
    ("LEFTPADDING", (0, 0), (-1, -1), 4),
    ("RIGHTPADDING", (0, 0), (-1, -1), 4),
    ("TOPPADDING", (0, 0), (-1, -1), 3),
    ("BOTTOMPADDING", (0, 0), (-1, -1), 3),
])


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> Table:
    table = Table([list(headers), *[list(r) for r in rows]], colWidths=[55 * mm, 100 * mm], hAlign="LEFT")
    table.setStyle(_TABLE_STYLE)
    return table


def _report_elements(report: ArtifactReport) -> list[Any]:
    styles = _styles()
    stimulus = report.stimulus
    elements: list[Any] = [
        Paragraph(report.system, styles["heading"]),
        _table(("Estímulo", ""), [
            ("tipo", stimulus.kind),
            ("frecuencia (Hz)", f"{stimulus.freq_hz:g}"),
            ("nivel (dB SPL)", f"{stimulus.level_db:g}"),
            ("duración (s)", f"{stimulus.duration_s:g}"),
        ]),
        Spacer(1, 6),
    ]

    metrics: list[tuple[str, str]] = []
    if report.thd_db is not None:
        suffix = " (piso)" if report.thd_floor else ""
        metrics.append(("THD fraccional (dB)", f"{report.thd_db:.2f}{suffix}"))
    metrics += [(f"energía {band} Hz (dB)", f"{db:.2f}") for band, db in sorted(report.band_energies.items())]
    if metrics:
        elements += [_table(("Métrica", "Valor"), metrics), Spacer(1, 6)]

    if report.peaks_hz:
        listed = ", ".join(f"{f:g}" for f in report.peaks_hz[:MAX_LISTED_PEAKS])
        if len(report.peaks_hz) > MAX_LISTED_PEAKS:
            listed += f" … (+{len(report.peaks_hz) - MAX_LISTED_PEAKS})"
        elements.append(Paragraph(f"Picos espectrales (Hz): {listed}", styles["body"]))
    for note in report.notes:
        elements.append(Paragraph(note, styles["body"]))
    elements.append(Spacer(1, 12))
    return elements


def render_probe_summary(reports: Sequence[ArtifactReport], title: str = "Probe summary") -> bytes:
    """Genera el PDF en memoria y devuelve sus bytes."""
    buffer = BytesIO()
    doc = SimpleDocTemplate(
        buffer,
        pagesize=A4,
        topMargin=22 * mm,
        bottomMargin=22 * mm,
        leftMargin=22 * mm,
        rightMargin=22 * mm,
        title=title,
        invariant=1,
    )
    elements: list[Any] = [Paragraph(title, _styles()["title"]), Spacer(1, 12)]
    for report in reports:
        elements.extend(_report_elements(report))
    doc.build(elements)
    return buffer.getvalue()


def write_probe_summary(reports: Sequence[ArtifactReport], path: Path,
                        title: str = "Probe summary") -> Path:
    """
    Raises:
        PersistenceError: Ruta no escribible
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(render_probe_summary(reports, title))
    except OSError as e:
        raise PersistenceError(f"cannot write {path}: {e}", details={"path": str(path)})
    return path
