"""
Weight Store
============

Checkpoints con cabecera de texto y payload float32 little-endian.

    aliasfree-weights v1
    @arch dconnear
    @spec hidden=8
    ...
    input.W shape=8x1 offset=0 nbytes=32
    ...
    @end
    <payload>

Los offsets son relativos al inicio del payload (primer byte tras `@end\\n`).
Cualquier error de cabecera se reporta con el byte offset, dentro del
archivo, del primer campo inválido.
"""

import logging
from pathlib import Path

import numpy as np

from src.domain.exceptions import CheckpointFormatError, PersistenceError, ResourceNotFoundError
from src.domain.interfaces import Checkpoint, IWeightStore

logger = logging.getLogger(__name__)

MAGIC = b"aliasfree-weights v1"
TERMINATOR = b"@end"
_DTYPE = np.dtype("<f4")


def render_header(checkpoint: Checkpoint) -> tuple[bytes, list[np.ndarray]]:
    """Cabecera serializada y arreglos float32 en el orden del payload."""
    lines = [MAGIC, f"@arch {checkpoint.arch}".encode()]
    lines += [f"@spec {key}={value}".encode() for key, value in checkpoint.spec.items()]
    payload: list[np.ndarray] = []
    offset = 0
    for name, array in checkpoint.arrays.items():
        data = np.ascontiguousarray(array, dtype=_DTYPE)
        shape = "x".join(str(d) for d in data.shape) or "1"
        lines.append(f"{name} shape={shape} offset={offset} nbytes={data.nbytes}".encode())
        payload.append(data)
        offset += data.nbytes
    lines.append(TERMINATOR)
    return b"\n".join(lines) + b"\n", payload


def _field(line: bytes, key: bytes, line_offset: int) -> tuple[bytes, int]:
    """Valor de `key=...` dentro de la línea y su offset absoluto."""
    start = 0
    for token in line.split(b" "):
        if token.startswith(key + b"="):
            return token[len(key) + 1:], line_offset + start
        start += len(token) + 1
    raise CheckpointFormatError(
        f"missing field '{key.decode()}'", offset=line_offset, details={"line": line.decode(errors="replace")}
    )


def _int(value: bytes, offset: int, what: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise CheckpointFormatError(f"invalid {what}", offset=offset,
                                    details={"value": value.decode(errors="replace")})
    if number < 0:
        raise CheckpointFormatError(f"negative {what}", offset=offset)
    return number


def parse_checkpoint(data: bytes) -> Checkpoint:
    """
    Parsea el contenido completo de un archivo de pesos.

    Raises:
        CheckpointFormatError: Cabecera mal formada o payload truncado
    """
    first = data.find(b"\n")
    if first < 0 or data[:first] != MAGIC:
        raise CheckpointFormatError("bad magic line", offset=0)

    arch: str | None = None
    spec: dict[str, str] = {}
    entries: list[tuple[str, tuple[int, ...], int, int, int]] = []
    position = first + 1
    while True:
        end = data.find(b"\n", position)
        if end < 0:
            raise CheckpointFormatError("missing header terminator", offset=position)
        line = data[position:end]
        if line == TERMINATOR:
            payload_start = end + 1
            break
        if line.startswith(b"@arch "):
            arch = line[6:].decode(errors="replace").strip()
        elif line.startswith(b"@spec "):
            key, sep, value = line[6:].partition(b"=")
            if not sep or not key:
                raise CheckpointFormatError("malformed @spec line", offset=position + 6)
            spec[key.decode()] = value.decode()
        elif line.startswith(b"@"):
            raise CheckpointFormatError("unknown directive", offset=position,
                                        details={"line": line.decode(errors="replace")})
        else:
            name = line.split(b" ", 1)[0]
            if not name or b"=" in name:
                raise CheckpointFormatError("missing array name", offset=position)
            shape_raw, shape_at = _field(line, b"shape", position)
            dims = tuple(_int(d, shape_at + 6, "shape") for d in shape_raw.split(b"x"))
            offset_raw, offset_at = _field(line, b"offset", position)
            nbytes_raw, nbytes_at = _field(line, b"nbytes", position)
            offset = _int(offset_raw, offset_at + 7, "offset")
            nbytes = _int(nbytes_raw, nbytes_at + 7, "nbytes")
            if nbytes != int(np.prod(dims)) * _DTYPE.itemsize:
                raise CheckpointFormatError("nbytes does not match shape", offset=nbytes_at + 7,
                                            details={"shape": list(dims), "nbytes": nbytes})
            entries.append((name.decode(), dims, offset, nbytes, nbytes_at + 7))
        position = end + 1

    if arch is None:
        raise CheckpointFormatError("missing @arch line", offset=first + 1)

    payload = data[payload_start:]
    arrays: dict[str, np.ndarray] = {}
    for name, dims, offset, nbytes, field_at in entries:
        if offset + nbytes > len(payload):
            raise CheckpointFormatError("array extends past end of payload", offset=field_at,
                                        details={"array": name, "payload_bytes": len(payload)})
        chunk = np.frombuffer(payload, dtype=_DTYPE, count=nbytes // _DTYPE.itemsize, offset=offset)
        arrays[name] = chunk.reshape(dims).astype(np.float64)
    return Checkpoint(arch=arch, spec=spec, arrays=arrays)


class TextHeaderWeightStore(IWeightStore):
    """
    Adapter de IWeightStore sobre archivos locales.

    Ejemplo:
        >>> store = TextHeaderWeightStore()
        >>> path = store.save(checkpoint, Path("model.weights"))
        >>> restored = store.load(path)
    """

    def save(self, checkpoint: Checkpoint, path: Path) -> Path:
        path = Path(path)
        header, payload = render_header(checkpoint)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("wb") as f:
                f.write(header)
                for array in payload:
                    f.write(array.tobytes())
        except OSError as e:
            raise PersistenceError(f"cannot write checkpoint: {e}", details={"path": str(path)})
        logger.info("checkpoint saved", extra={"path": str(path), "arrays": len(payload)})
        return path

    def load(self, path: Path) -> Checkpoint:
        path = Path(path)
        if not path.is_file():
            raise ResourceNotFoundError(f"checkpoint not found: {path}", details={"path": str(path)})
        return parse_checkpoint(path.read_bytes())
