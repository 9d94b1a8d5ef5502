# ================================
# Infrastructure PDF
# ================================
# Resumen de sondas en PDF con ReportLab.
# ================================

from .probe_summary import render_probe_summary, write_probe_summary

__all__ = ["render_probe_summary", "write_probe_summary"]
