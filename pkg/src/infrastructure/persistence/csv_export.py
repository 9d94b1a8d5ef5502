"""
CSV Exports
===========

Tablas de resultados con formato numérico fijo (`%.10g`) para que dos
corridas idénticas produzcan archivos byte-idénticos.
"""

import csv
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from src.domain.entities import TrainingRun
from src.domain.exceptions import PersistenceError
from src.domain.value_objects import CFGrid, Spectrum

FLOAT_FORMAT = "%.10g"


def _cell(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % float(value)
    return str(value)


def write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """
    Escribe un CSV con encabezado; los flotantes se formatean con %.10g.

    Raises:
        PersistenceError: Ruta no escribible
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
    except OSError as e:
        raise PersistenceError(f"cannot write {path}: {e}", details={"path": str(path)})
    return path


def write_spectrum_csv(spectrum: Spectrum, path: Path, db: bool = True) -> Path:
    if db:
        values = spectrum.magnitudes_db(floor=1e-300)
        return write_rows(path, ("freq_hz", "magnitude_db"), zip(spectrum.bin_freqs, values, strict=True))
    return write_rows(path, ("freq_hz", "magnitude"), zip(spectrum.bin_freqs, spectrum.magnitudes, strict=True))


def write_fiber_curves_csv(levels: np.ndarray, curves: Mapping[str, np.ndarray], path: Path) -> Path:
    """`level_db,hsr,msr,lsr` para curvas de tasa o de sincronía."""
    names = list(curves)
    rows = ([level, *(curves[n][i] for n in names)] for i, level in enumerate(levels))
    return write_rows(path, ("level_db", *names), rows)


def write_excitation_csv(
    patterns: Mapping[float, np.ndarray],
    levels: Sequence[float],
    grid: CFGrid,
    path: Path,
) -> Path:
    """Formato largo `tone_hz,level_db,cf_hz,rms`."""
    rows = []
    for tone_hz, pattern in patterns.items():
        for j, level in enumerate(levels):
            for i, cf in enumerate(grid.center_freqs):
                rows.append((float(tone_hz), float(level), float(cf), float(pattern[i, j])))
    return write_rows(path, ("tone_hz", "level_db", "cf_hz", "rms"), rows)


def write_training_log_csv(run: TrainingRun, path: Path) -> Path:
    rows = ((r.epoch, r.train_loss, r.val_loss, r.lr) for r in run.epochs)
    return write_rows(path, ("epoch", "train_loss", "val_loss", "lr"), rows)


def write_nrmse_csv(rows: Iterable[tuple[float, float, float]], path: Path) -> Path:
    return write_rows(path, ("level_db", "nrmse_unprocessed", "nrmse_processed"), rows)


def read_rows(path: Path) -> list[dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
