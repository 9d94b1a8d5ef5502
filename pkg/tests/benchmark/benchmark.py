"""
Benchmark Script - Tiempo Real por Arquitectura
===============================================

Compara el factor de tiempo real (RTF) del dCoNNear de escritorio contra
los autoencoders de profundidad 4 y, opcionalmente, los presets
publicados de 21 CFs.

Uso:
    python tests/benchmark/benchmark.py [n_frames] [--presets]
"""

import statistics
import sys
import time

import numpy as np

from src.application.use_cases.common import DESK_SPEC
from src.domain.value_objects import ModelSpec
from src.infrastructure.analysis import rtf_bench
from src.infrastructure.analysis.bench import DEFAULT_FRAME_LEN, hardware_description
from src.infrastructure.analysis.probes import input_channels
from src.infrastructure.nn import AutoencoderBaseline, DCoNNear, Module, published_spec
from src.infrastructure.training.trainers import model_contexts


def candidates(with_presets: bool) -> dict[str, Module]:
    models: dict[str, Module] = {"dconnear (desk)": DCoNNear(ModelSpec.from_dict(DESK_SPEC))}
    for mode in ("transposed", "subpixel", "nearest"):
        models[f"autoencoder {mode}"] = AutoencoderBaseline(4, mode)
    if with_presets:
        models["preset cochlear"] = DCoNNear(published_spec("cochlear", 21))
        models["preset ihc"] = DCoNNear(published_spec("ihc", 21))
    return models


def frame_times(model: Module, n_frames: int) -> list[float]:
    """Tiempos individuales por frame en ms (para percentiles)."""
    left, right = model_contexts(model)
    rng = np.random.default_rng(0)
    times = []
    for _ in range(n_frames):
        frame = rng.standard_normal((input_channels(model), left + DEFAULT_FRAME_LEN + right)) * 0.02
        start = time.perf_counter()
        model.forward(frame)
        times.append((time.perf_counter() - start) * 1000)
    return times


def print_stats(times: list[float], label: str, frame_ms: float):
    if len(times) < 2:
        print(f"\n{label}: no hay datos suficientes")
        return

    ordered = sorted(times)
    print(f"\n{'=' * 60}")
    print(label)
    print(f"{'=' * 60}")
    print(f"Frames:            {len(times)}")
    print(f"Tiempo promedio:   {statistics.mean(times):.3f}ms")
    print(f"Mediana (P50):     {statistics.median(times):.3f}ms")
    print(f"P95:               {ordered[int(len(times) * 0.95)]:.3f}ms")
    print(f"Máximo:            {max(times):.3f}ms")
    print(f"Std Dev:           {statistics.stdev(times):.3f}ms")
    print(f"\nRTF (P50):         {statistics.median(times) / frame_ms:.4f}")
    print(f"{'=' * 60}\n")


def main():
    args = [a for a in sys.argv[1:] if not a.startswith("--")]
    n_frames = int(args[0]) if args else 50
    with_presets = "--presets" in sys.argv

    print("\n" + "=" * 60)
    print("BENCHMARK - RTF POR ARQUITECTURA")
    print("=" * 60)
    print(f"Hardware: {hardware_description()}")
    print(f"Frame: {DEFAULT_FRAME_LEN} muestras")
    print("=" * 60)

    summary = {}
    for label, model in candidates(with_presets).items():
        result = rtf_bench(model, n_frames=n_frames)
        print_stats(frame_times(model, n_frames), f"{label} ({model.param_count} parámetros)", result.frame_ms)
        summary[label] = result.rtf

    print("\n" + "=" * 60)
    print("COMPARACIÓN (RTF medio, < 1 es tiempo real)")
    print("=" * 60)
    for label, rtf in summary.items():
        print(f"{label:<24}{rtf:.4f}")
    print("=" * 60 + "\n")


if __name__ == "__main__":
    main()
