"""File formats.

``.magtxt``
    Two text lines, ``tau: n1 n2 ... np`` and ``edges: j1 j2 ... jk`` with the
    present edge indices in strictly ascending decimal. A classical graph is
    written the same way with ``tau: n``.
``.charbits``
    8-byte big-endian bit length, then the characteristic string packed MSB
    first.
``.mages``
    The composite edge set string stream, as is.
``.taubits``
    The encoded companion tuple, as is.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, List

from .codec import CharacteristicString, EdgeSetString, EncodedTau
from .core.errors import DecodeError, MagValidationError, ReportIOError
from .isomorphism import ClassicalGraph, mag_to_graph
from .mag import CompanionTuple, SimpleMag, make_mag

CHUNK_SIZE = 1 << 20


def format_magtxt(mag: SimpleMag) -> str:
    edges = " ".join(str(j) for j in mag.edge_indices())
    return f"tau: {mag.tau}\nedges: {edges}".rstrip() + "\n"


def format_graph_txt(g: ClassicalGraph) -> str:
    return format_magtxt(g.as_mag())


def _field(line: str, name: str) -> str:
    key, sep, value = line.partition(":")
    if not sep or key.strip() != name:
        raise MagValidationError(f"expected a '{name}:' line, got {line!r}")
    return value


def parse_magtxt(text: str) -> SimpleMag:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 2:
        raise MagValidationError(f"a .magtxt document has exactly two lines, got {len(lines)}")
    tau = CompanionTuple.parse(_field(lines[0], "tau"))
    try:
        indices: List[int] = [int(token) for token in _field(lines[1], "edges").split()]
    except ValueError as exc:
        raise MagValidationError("edge indices must be decimal integers") from exc
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise MagValidationError("edge indices must be strictly ascending")
    return make_mag(tau, indices)


def parse_graph_txt(text: str) -> ClassicalGraph:
    mag = parse_magtxt(text)
    if mag.tau.order != 1:
        raise MagValidationError(f"a graph file has 'tau: n' with one size, got ({mag.tau})")
    return mag_to_graph(mag)


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc


def write_text(path: Path, text: str) -> Path:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc}") from exc
    return Path(path)


def read_bytes(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc


def write_bytes(path: Path, data: bytes) -> Path:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc}") from exc
    return Path(path)


def iter_chunks(path: Path, size: int = CHUNK_SIZE) -> Iterator[bytes]:
    """Stream a binary file in fixed-size chunks."""

    try:
        with open(path, "rb") as handle:
            while chunk := handle.read(size):
                yield chunk
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc


def read_magtxt(path: Path) -> SimpleMag:
    return parse_magtxt(read_text(path))


def write_magtxt(path: Path, mag: SimpleMag) -> Path:
    return write_text(path, format_magtxt(mag))


def pack_charbits(x: CharacteristicString) -> bytes:
    return x.length.to_bytes(8, "big") + x.data


def unpack_charbits(data: bytes) -> CharacteristicString:
    if len(data) < 8:
        raise DecodeError(".charbits files start with an 8-byte bit length")
    length = int.from_bytes(data[:8], "big")
    payload = data[8:]
    if len(payload) != (length + 7) // 8:
        raise DecodeError(f".charbits header says {length} bits but {len(payload)} payload bytes follow")
    spare = len(payload) * 8 - length
    if spare and payload[-1] & ((1 << spare) - 1):
        raise DecodeError(".charbits padding bits must be zero")
    return CharacteristicString(payload, length)


def read_charbits(path: Path) -> CharacteristicString:
    return unpack_charbits(read_bytes(path))


def write_charbits(path: Path, x: CharacteristicString) -> Path:
    return write_bytes(path, pack_charbits(x))


def read_mages(path: Path) -> EdgeSetString:
    return EdgeSetString(read_bytes(path))


def write_mages(path: Path, s: EdgeSetString) -> Path:
    return write_bytes(path, s.data)


def read_taubits(path: Path) -> EncodedTau:
    return EncodedTau(read_bytes(path))


def write_taubits(path: Path, t: EncodedTau) -> Path:
    return write_bytes(path, t.data)
