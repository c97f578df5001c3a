"""Lossless compressors used as computable stand-ins for algorithmic complexity.

Built-ins:

* ``lz``: raw DEFLATE (LZ77 + Huffman), level 9, no container header, behind a
  stage that turns long constant runs into single length-coded matches;
* ``rle``: byte run-length tokens followed by an order-0 canonical Huffman
  coder, implemented here.

``lzma`` and ``bz2`` are registered as extras. Further compressors can be
added with :func:`register_compressor`.
"""
from __future__ import annotations

import bz2
import heapq
import lzma
import zlib
from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from ..core.errors import CompressorError


class Compressor(ABC):
    """A deterministic byte-to-byte compressor with a matching decompressor."""

    name: str = ""

    @abstractmethod
    def compress(self, data: bytes) -> bytes:
        ...

    @abstractmethod
    def decompress(self, data: bytes) -> bytes:
        ...

    def compressed_size(self, chunks: Iterable[bytes]) -> int:
        """Compressed size in bytes of the concatenation of *chunks*."""

        return len(self.compress(b"".join(chunks)))


class LzCompressor(Compressor):
    """Raw DEFLATE behind a long-run stage.

    Runs of at least :data:`LONG_RUN` equal bytes reach DEFLATE as a single
    match token with a varint length.
    """

    name = "lz"

    def __init__(self, level: int = 9) -> None:
        self.level = level

    def _compressobj(self):
        return zlib.compressobj(self.level, zlib.DEFLATED, -15, 9)

    def compress(self, data: bytes) -> bytes:
        return self._deflate([data])

    def decompress(self, data: bytes) -> bytes:
        try:
            collapsed = zlib.decompress(data, -15)
        except zlib.error as exc:
            raise CompressorError(f"corrupt lz payload: {exc}") from exc
        return _expand_long_runs(collapsed)

    def compressed_size(self, chunks: Iterable[bytes]) -> int:
        obj = self._compressobj()
        runs = _LongRunCollapser()
        size = 0
        for chunk in chunks:
            size += len(obj.compress(runs.feed(chunk)))
        return size + len(obj.compress(runs.flush())) + len(obj.flush())

    def _deflate(self, chunks: Iterable[bytes]) -> bytes:
        obj = self._compressobj()
        runs = _LongRunCollapser()
        parts = [obj.compress(runs.feed(chunk)) for chunk in chunks]
        parts.append(obj.compress(runs.flush()))
        parts.append(obj.flush())
        return b"".join(parts)


class LzmaCompressor(Compressor):
    name = "lzma"

    _FILTERS = [{"id": lzma.FILTER_LZMA2, "preset": 6}]

    def compress(self, data: bytes) -> bytes:
        return lzma.compress(data, format=lzma.FORMAT_RAW, filters=self._FILTERS)

    def decompress(self, data: bytes) -> bytes:
        try:
            return lzma.decompress(data, format=lzma.FORMAT_RAW, filters=self._FILTERS)
        except lzma.LZMAError as exc:
            raise CompressorError(f"corrupt lzma payload: {exc}") from exc

    def compressed_size(self, chunks: Iterable[bytes]) -> int:
        obj = lzma.LZMACompressor(format=lzma.FORMAT_RAW, filters=self._FILTERS)
        size = 0
        for chunk in chunks:
            size += len(obj.compress(chunk))
        return size + len(obj.flush())


class Bz2Compressor(Compressor):
    name = "bz2"

    def compress(self, data: bytes) -> bytes:
        return bz2.compress(data, 9)

    def decompress(self, data: bytes) -> bytes:
        try:
            return bz2.decompress(data)
        except (OSError, ValueError) as exc:
            raise CompressorError(f"corrupt bz2 payload: {exc}") from exc

    def compressed_size(self, chunks: Iterable[bytes]) -> int:
        obj = bz2.BZ2Compressor(9)
        size = 0
        for chunk in chunks:
            size += len(obj.compress(chunk))
        return size + len(obj.flush())


# --- run-length + order-0 Huffman ------------------------------------------------------


def _varint(value: int) -> bytes:
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(data: bytes, pos: int) -> Tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise CompressorError("truncated varint")
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def _run_tokens(data: bytes) -> np.ndarray:
    """Encode *data* as ``value, varint(run - 1)`` tokens, vectorized."""

    arr = np.frombuffer(data, dtype=np.uint8)
    starts = np.flatnonzero(np.concatenate(([True], arr[1:] != arr[:-1])))
    runs = np.diff(np.append(starts, arr.size)).astype(np.int64) - 1
    values = arr[starts]

    widths = np.ones(runs.size, dtype=np.int64)
    rest = runs >> 7
    while rest.any():
        widths += rest > 0
        rest >>= 7
    sizes = widths + 1
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    tokens = np.zeros(int(sizes.sum()), dtype=np.uint8)
    tokens[offsets] = values
    rest = runs.copy()
    for k in range(int(widths.max())):
        active = widths > k
        more = widths[active] > k + 1
        tokens[offsets[active] + 1 + k] = ((rest[active] & 0x7F) | (more.astype(np.int64) << 7)).astype(np.uint8)
        rest >>= 7
    return tokens


def _code_lengths(counts: np.ndarray) -> List[int]:
    symbols = [int(s) for s in np.flatnonzero(counts)]
    lengths = [0] * 256
    if len(symbols) == 1:
        lengths[symbols[0]] = 1
        return lengths
    heap: List[Tuple[int, int, List[int]]] = [(int(counts[s]), s, [s]) for s in symbols]
    heapq.heapify(heap)
    tie = 256
    while len(heap) > 1:
        weight_a, _, members_a = heapq.heappop(heap)
        weight_b, _, members_b = heapq.heappop(heap)
        for s in members_a + members_b:
            lengths[s] += 1
        heapq.heappush(heap, (weight_a + weight_b, tie, members_a + members_b))
        tie += 1
    return lengths


def _canonical_codes(lengths: List[int]) -> Dict[int, Tuple[int, int]]:
    ordered = sorted((length, symbol) for symbol, length in enumerate(lengths) if length)
    codes: Dict[int, Tuple[int, int]] = {}
    code = 0
    previous = 0
    for length, symbol in ordered:
        code <<= length - previous
        codes[symbol] = (code, length)
        code += 1
        previous = length
    return codes


class RunLengthHuffmanCompressor(Compressor):
    """Byte run-length tokens, then order-0 canonical Huffman.

    Layout: ``varint(len(data))``; for non-empty input, 256 code-length bytes,
    ``varint(token_count)`` and the MSB-first Huffman bit stream.
    """

    name = "rle"
    MAX_CODE_LENGTH = 255

    def compress(self, data: bytes) -> bytes:
        header = _varint(len(data))
        if not data:
            return header
        tokens = _run_tokens(data)
        lengths = _code_lengths(np.bincount(tokens, minlength=256))
        if max(lengths) > self.MAX_CODE_LENGTH:
            raise CompressorError("Huffman code length overflow")
        codes = _canonical_codes(lengths)
        table = [""] * 256
        for symbol, (code, length) in codes.items():
            table[symbol] = format(code, f"0{length}b")
        bits = "".join(map(table.__getitem__, tokens.tolist()))
        bits += "0" * (-len(bits) % 8)
        payload = int(bits, 2).to_bytes(len(bits) // 8, "big") if bits else b""
        return header + bytes(lengths) + _varint(int(tokens.size)) + payload

    def decompress(self, data: bytes) -> bytes:
        size, pos = _read_varint(data, 0)
        if size == 0:
            if pos != len(data):
                raise CompressorError("trailing bytes after empty rle payload")
            return b""
        if len(data) < pos + 256:
            raise CompressorError("truncated rle code table")
        lengths = list(data[pos : pos + 256])
        pos += 256
        token_count, pos = _read_varint(data, pos)
        decode = {(length, code): symbol for symbol, (code, length) in _canonical_codes(lengths).items()}
        bits = "".join(format(byte, "08b") for byte in data[pos:])

        tokens = bytearray()
        cursor = 0
        for _ in range(token_count):
            code = 0
            length = 0
            while True:
                if cursor >= len(bits) or length >= self.MAX_CODE_LENGTH:
                    raise CompressorError("corrupt rle bit stream")
                code = (code << 1) | (bits[cursor] == "1")
                cursor += 1
                length += 1
                symbol = decode.get((length, code))
                if symbol is not None:
                    tokens.append(symbol)
                    break

        out = bytearray()
        i = 0
        while i < len(tokens):
            value = tokens[i]
            run, i = _read_varint(tokens, i + 1)
            out += bytes((value,)) * (run + 1)
        if len(out) != size:
            raise CompressorError(f"rle payload expands to {len(out)} bytes, header says {size}")
        return bytes(out)


# --- long-run stage of ``lz`` -----------------------------------------------------------

LONG_RUN = 256
ESCAPE = 0xA5


def _encode_run(value: int, count: int) -> bytes:
    if count >= LONG_RUN:
        return bytes((ESCAPE,)) + _varint(count - LONG_RUN + 1) + bytes((value,))
    if value == ESCAPE:
        return bytes((ESCAPE, 0)) * count
    return bytes((value,)) * count


def _escape(arr: np.ndarray) -> bytes:
    hits = arr == ESCAPE
    if not hits.any():
        return arr.tobytes()
    out = np.repeat(arr, 1 + hits.astype(np.int64))
    at = np.flatnonzero(hits)
    out[at + np.arange(1, at.size + 1)] = 0
    return out.tobytes()


def _collapse_block(arr: np.ndarray) -> bytes:
    """Collapse a block that starts and ends on run boundaries."""

    if arr.size == 0:
        return b""
    starts = np.flatnonzero(np.concatenate(([True], arr[1:] != arr[:-1])))
    lengths = np.diff(np.append(starts, arr.size))
    pieces = []
    done = 0
    for i in np.flatnonzero(lengths >= LONG_RUN).tolist():
        start = int(starts[i])
        pieces.append(_escape(arr[done:start]))
        pieces.append(_encode_run(int(arr[start]), int(lengths[i])))
        done = start + int(lengths[i])
    pieces.append(_escape(arr[done:]))
    return b"".join(pieces)


class _LongRunCollapser:
    """Streaming stage writing ``ESCAPE varint(n - LONG_RUN + 1) value`` for each run of
    ``n >= LONG_RUN`` equal bytes and ``ESCAPE 0x00`` for a literal ``ESCAPE``.

    The trailing run of every chunk is held back, so the output does not depend
    on how the input was chunked.
    """

    def __init__(self) -> None:
        self._value = 0
        self._count = 0

    def feed(self, chunk: bytes) -> bytes:
        arr = np.frombuffer(chunk, dtype=np.uint8)
        if arr.size == 0:
            return b""
        pieces = []
        if self._count:
            if arr[0] == self._value:
                differs = np.flatnonzero(arr != self._value)
                if differs.size == 0:
                    self._count += arr.size
                    return b""
                self._count += int(differs[0])
                arr = arr[int(differs[0]) :]
            pieces.append(_encode_run(self._value, self._count))
        changes = np.flatnonzero(arr[1:] != arr[:-1])
        tail = int(changes[-1]) + 1 if changes.size else 0
        pieces.append(_collapse_block(arr[:tail]))
        self._value, self._count = int(arr[-1]), int(arr.size - tail)
        return b"".join(pieces)

    def flush(self) -> bytes:
        if not self._count:
            return b""
        out = _encode_run(self._value, self._count)
        self._count = 0
        return out


def _expand_long_runs(data: bytes) -> bytes:
    out = bytearray()
    pos = 0
    while True:
        at = data.find(ESCAPE, pos)
        if at < 0:
            out += data[pos:]
            return bytes(out)
        out += data[pos:at]
        run, pos = _read_varint(data, at + 1)
        if run == 0:
            out.append(ESCAPE)
            continue
        if pos >= len(data):
            raise CompressorError("lz long run is missing its value byte")
        out += data[pos : pos + 1] * (run + LONG_RUN - 1)
        pos += 1


# --- registry ---------------------------------------------------------------------------

_REGISTRY: Dict[str, Callable[[], Compressor]] = {
    LzCompressor.name: LzCompressor,
    RunLengthHuffmanCompressor.name: RunLengthHuffmanCompressor,
    LzmaCompressor.name: LzmaCompressor,
    Bz2Compressor.name: Bz2Compressor,
}

BUILTIN_COMPRESSORS = ("lz", "rle")


def register_compressor(name: str, factory: Callable[[], Compressor]) -> None:
    _REGISTRY[name] = factory


def available_compressors() -> List[str]:
    return sorted(_REGISTRY)


def get_compressor(name: str) -> Compressor:
    try:
        factory = _REGISTRY[name]
    except KeyError as exc:
        raise CompressorError(
            f"unknown compressor {name!r}; available: {', '.join(available_compressors())}"
        ) from exc
    return factory()
