"""
Bench Model Use Case
====================

Mide el factor de tiempo real de un modelo y escribe `bench.txt`
(clave = valor) y `bench.csv`.
"""

import logging
from pathlib import Path

from src.application.dto import BenchRequestDTO, BenchResultDTO
from src.application.use_cases.common import build_model
from src.domain.interfaces import IWeightStore
from src.infrastructure.analysis import rtf_bench
from src.infrastructure.persistence import write_rows, write_text

logger = logging.getLogger(__name__)

REPORT_NAME = "bench.txt"
CSV_NAME = "bench.csv"


class BenchModelUseCase:
    """Caso de uso del comando bench."""

    def __init__(self, weight_store: IWeightStore) -> None:
        self._weights = weight_store

    def execute(self, request: BenchRequestDTO, out_dir: Path) -> BenchResultDTO:
        """
        Raises:
            AnalysisError: "no frames" si n_frames < 1
        """
        model = build_model(request.model, weight_store=self._weights)
        result = rtf_bench(model, request.frame_len, request.n_frames, seed=request.seed)

        out_dir = Path(out_dir)
        fields = {
            "arch": model.arch,
            "frame_len": request.frame_len,
            "n_frames": result.n_frames,
            "mean_ms": f"{result.mean_ms:.6g}",
            "frame_ms": f"{result.frame_ms:.6g}",
            "rtf": f"{result.rtf:.6g}",
            "hardware": result.hardware,
        }
        report = write_text("".join(f"{k} = {v}\n" for k, v in fields.items()), out_dir / REPORT_NAME)
        csv = write_rows(
            out_dir / CSV_NAME,
            ("frame_len", "n_frames", "mean_ms", "frame_ms", "rtf", "hardware"),
            [(request.frame_len, result.n_frames, result.mean_ms, result.frame_ms, result.rtf, result.hardware)],
        )
        return BenchResultDTO(report=report, csv=csv, mean_ms=result.mean_ms, rtf=result.rtf,
                              hardware=result.hardware)
