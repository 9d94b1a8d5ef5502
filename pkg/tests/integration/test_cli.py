"""
Tests de Integración - CLI
==========================

Corre `main()` de punta a punta: directorio de la corrida, archivos de
salida, líneas de stdout y códigos de salida.
"""

from pathlib import Path

import pytest

from src.infrastructure.config import get_settings
from src.infrastructure.persistence import MAGIC, read_report_fields, read_rows
from src.main import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from src.presentation.cli import RESOLVED_NAME

pytestmark = pytest.mark.integration

TINY_SPEC = ["--set", "spec.blocks_per_repeat=2", "--set", "spec.hidden=2",
             "--set", "spec.left_context=8", "--set", "spec.right_context=4"]


def _run(capsys, *argv: str) -> tuple[int, dict[str, str], str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    lines = {}
    for line in captured.out.splitlines():
        key, sep, value = line.partition(" = ")
        if sep:
            lines[key] = value
    return code, lines, captured.err


def _corpus(capsys, out: Path, *extra: str) -> Path:
    code, lines, err = _run(capsys, "gen-corpus", "--out", str(out), "--seed", "3",
                            "--set", "count=2", "--set", "duration_s=0.05", *extra)
    assert code == EXIT_OK, err
    return Path(lines["corpus"])


# ================================
# Tests de gen-corpus
# ================================

def test_gen_corpus_is_deterministic(capsys, tmp_path):
    """Test que la misma semilla produce el mismo manifiesto y los mismos WAV."""
    # Act
    first = _corpus(capsys, tmp_path / "a", "--set", "snr_range=0,10")
    second = _corpus(capsys, tmp_path / "b", "--set", "snr_range=0,10")

    # Assert
    assert (first / "manifest.csv").read_bytes() == (second / "manifest.csv").read_bytes()
    rows = read_rows(first / "manifest.csv")
    assert len(rows) == 2
    for row in rows:
        for column in ("clean", "noisy"):
            assert (first / row[column]).read_bytes() == (second / row[column]).read_bytes()


def test_run_dir_holds_resolved_config(capsys, tmp_path):
    """Test del directorio de la corrida y su resolved.cfg."""
    code, lines, _ = _run(capsys, "gen-corpus", "--out", str(tmp_path), "--set", "count=1",
                          "--set", "duration_s=0.05")

    run_dir = Path(lines["run_dir"])
    assert code == EXIT_OK
    assert run_dir.parent == tmp_path
    assert run_dir.name.startswith("gen-corpus-")
    assert "count = 1" in (run_dir / RESOLVED_NAME).read_text(encoding="utf-8")
    assert lines["clips"] == "1"


def test_empty_corpus_is_valid(capsys, tmp_path):
    """Test de count = 0: solo el encabezado del manifiesto."""
    code, lines, _ = _run(capsys, "gen-corpus", "--out", str(tmp_path), "--set", "count=0")

    assert code == EXIT_OK
    assert lines["clips"] == "0"
    assert read_rows(Path(lines["corpus"]) / "manifest.csv") == []


def test_default_out_comes_from_environment(capsys, tmp_path):
    """Test que sin --out se usa ALIASFREE_OUT."""
    code, lines, _ = _run(capsys, "gen-corpus", "--set", "count=0")

    assert code == EXIT_OK
    assert Path(lines["run_dir"]).parent == tmp_path / "runs"


# ================================
# Tests de Errores de Uso
# ================================

@pytest.mark.parametrize(
    "argv",
    [[], ["serve"], ["gen-corpus", "--set", "count"], ["gen-corpus", "--set", "count=-1"]],
    ids=["no-command", "unknown-command", "malformed-override", "invalid-value"],
)
def test_usage_errors_exit_one(capsys, argv):
    """Test de errores de uso y configuración."""
    code, _, err = _run(capsys, *argv)

    assert code == EXIT_USAGE
    assert err.startswith("error [CONFIGURATION_ERROR]")


def test_error_line_is_the_only_stderr_output_at_info(capsys, monkeypatch):
    """Test que con logging INFO el error se imprime una sola vez y sin prefijo de log."""
    monkeypatch.setenv("ALIASFREE_LOG_LEVEL", "INFO")
    get_settings.cache_clear()

    code, _, err = _run(capsys, "gen-corpus", "--set", "count=-1")

    assert code == EXIT_USAGE
    assert len(err.splitlines()) == 1
    assert err.startswith("error [CONFIGURATION_ERROR]")


def test_unknown_task_lists_valid_tasks(capsys, tmp_path):
    """Test de tarea desconocida en train."""
    code, _, err = _run(capsys, "train", "--out", str(tmp_path), "--set", "task=denoise",
                        "--set", "corpus=nowhere")

    assert code == EXIT_USAGE
    assert "emulator" in err


def test_missing_corpus_is_runtime_error(capsys, tmp_path):
    """Test de corpus inexistente: código 2."""
    code, _, err = _run(capsys, "train", "--out", str(tmp_path), "--set", "task=emulator",
                        "--set", f"corpus={tmp_path / 'nowhere'}")

    assert code == EXIT_RUNTIME
    assert "RESOURCE_NOT_FOUND" in err


def test_invalid_model_spec_exits_one(capsys, tmp_path):
    """Test de clave desconocida en [spec]."""
    code, _, err = _run(capsys, "bench", "--out", str(tmp_path), "--set", "spec.width=3")

    assert code == EXIT_USAGE
    assert "INVALID_SPEC" in err


# ================================
# Tests de probe
# ================================

def test_identity_probe_writes_reports(capsys, tmp_path):
    """Test de sondas de tono y escalón sobre la identidad."""
    # Act
    code, lines, _ = _run(capsys, "probe", "--out", str(tmp_path), "--set", "pdf=true")

    # Assert
    run_dir = Path(lines["run_dir"])
    assert code == EXIT_OK
    assert float(lines["tone.thd_db"]) == -160.0
    assert read_report_fields(run_dir / "tone.report")["thd_floor"] == "true"
    assert (run_dir / "step_spectrum.csv").is_file()
    assert (run_dir / "probe_summary.pdf").read_bytes().startswith(b"%PDF")
    summary = read_rows(run_dir / "probe_summary.csv")
    assert {(row["probe"], row["metric"]) for row in summary} == {("tone", "thd_db"), ("tone", "sub500_db"),
                                                                  ("step", "peaks")}


def test_aliasing_probe_needs_an_encoder(capsys, tmp_path):
    """Test de aliasing sobre un sistema sin etapas de decimación."""
    code, _, err = _run(capsys, "probe", "--out", str(tmp_path), "--set", "probes=aliasing")

    assert code == EXIT_USAGE
    assert "aliasing probe" in err


def test_malformed_checkpoint_reports_offset(capsys, tmp_path):
    """Test que un checkpoint corrupto sale con 2 y el offset del error."""
    # Arrange
    path = tmp_path / "broken.weights"
    data = MAGIC + b"\n@arch dconnear\nl.W shape=2 offset=abc nbytes=8\n@end\n"
    path.write_bytes(data)

    # Act
    code, _, err = _run(capsys, "probe", "--out", str(tmp_path), "--set", "system=checkpoint",
                        "--set", f"model.checkpoint={path}")

    # Assert
    assert code == EXIT_RUNTIME
    assert "CHECKPOINT_FORMAT" in err
    assert f"offset={data.find(b'offset=abc') + len(b'offset=')}" in err


# ================================
# Tests de train + probe
# ================================

@pytest.mark.slow
def test_trained_emulator_can_be_probed(capsys, tmp_path):
    """Test de train emulator seguido de probe sobre el checkpoint."""
    # Arrange
    corpus = _corpus(capsys, tmp_path / "corpus")

    # Act
    code, lines, err = _run(capsys, "train", "--out", str(tmp_path / "train"), "--seed", "1",
                            "--set", "task=emulator", "--set", f"corpus={corpus}",
                            "--set", "epochs=1", "--set", "window=64", *TINY_SPEC)
    assert code == EXIT_OK, err
    checkpoint = Path(lines["checkpoint"])
    probe_code, probe_lines, probe_err = _run(capsys, "probe", "--out", str(tmp_path / "probe"),
                                              "--set", "system=checkpoint",
                                              "--set", f"model.checkpoint={checkpoint}")

    # Assert
    assert checkpoint.read_bytes().startswith(MAGIC)
    assert read_rows(Path(lines["log"]))[0]["epoch"] == "1"
    assert probe_code == EXIT_OK, probe_err
    assert "tone.thd_db" in probe_lines


# ================================
# Tests de metrics y bench
# ================================

def test_metrics_of_reference_against_itself_is_zero(capsys, tmp_path):
    """Test de NRMSE NH vs NH: cero a todos los niveles."""
    corpus = _corpus(capsys, tmp_path / "corpus")

    code, lines, err = _run(capsys, "metrics", "--out", str(tmp_path / "metrics"),
                            "--set", f"corpus={corpus}", "--set", "profile=NH",
                            "--set", "levels=40,70", "--set", "n_cf=3", "--set", "max_clips=1")

    assert code == EXIT_OK, err
    rows = read_rows(Path(lines["nrmse"]))
    assert [row["level_db"] for row in rows] == ["40", "70"]
    assert all(row["nrmse_unprocessed"] == "0" and row["nrmse_processed"] == "0" for row in rows)


def test_bench_writes_report(capsys, tmp_path):
    """Test de los campos de bench.txt."""
    code, lines, err = _run(capsys, "bench", "--out", str(tmp_path), "--set", "n_frames=2", *TINY_SPEC)

    assert code == EXIT_OK, err
    text = Path(lines["report"]).read_text(encoding="utf-8")
    fields = dict(line.split(" = ", 1) for line in text.splitlines())
    assert fields["arch"] == "dconnear"
    assert fields["n_frames"] == "2"
    assert float(fields["rtf"]) > 0.0
    assert (Path(lines["run_dir"]) / "bench.csv").is_file()


def test_bench_without_frames_is_runtime_error(capsys, tmp_path):
    """Test de n_frames = 0."""
    code, _, err = _run(capsys, "bench", "--out", str(tmp_path), "--set", "n_frames=0")

    assert code == EXIT_RUNTIME
    assert "no frames" in err


def test_probe_outputs_are_deterministic(capsys, tmp_path):
    """Test que dos corridas con la misma semilla escriben los mismos bytes."""
    outputs = []
    for name in ("a", "b"):
        code, lines, err = _run(capsys, "probe", "--out", str(tmp_path / name), "--seed", "4",
                                "--set", "system=dconnear", *TINY_SPEC)
        assert code == EXIT_OK, err
        run_dir = Path(lines["run_dir"])
        outputs.append({f: (run_dir / f).read_bytes()
                        for f in ("tone.report", "step.report", "tone_spectrum.csv", "probe_summary.csv")})

    assert outputs[0] == outputs[1]
