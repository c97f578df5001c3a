"""Streaming bit writer/reader and the Elias-gamma prefix-free integer code.

Bits travel as text of ``"0"``/``"1"`` characters inside the writer and the
reader: joining and searching such text runs at C speed in CPython, which is
what makes record-by-record enumeration of large edge spaces affordable.
Packed output is most-significant-bit first; only the very end of a stream is
padded with zeros up to a byte boundary.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np

from .core.errors import DecodeError, MagValidationError


@lru_cache(maxsize=4096)
def gamma_code(n: int) -> str:
    """Elias-gamma code of ``n >= 1``: ``floor(log2 n)`` zeros, then ``n`` in binary."""

    if n < 1:
        raise MagValidationError(f"Elias-gamma codes positive integers only, got {n}")
    binary = format(n, "b")
    return "0" * (len(binary) - 1) + binary


def decode_gamma(bits: str, pos: int = 0) -> Tuple[int, int]:
    """Decode one gamma code from *bits* at *pos*; returns ``(value, next_pos)``."""

    one = bits.find("1", pos)
    if one < 0:
        raise DecodeError("stream ended inside an Elias-gamma prefix")
    zeros = one - pos
    end = one + zeros + 1
    if end > len(bits):
        raise DecodeError("stream ended inside an Elias-gamma payload")
    return int(bits[one:end], 2), end


def bits_to_bytes(bits: str) -> bytes:
    """Pack a bit string MSB first, zero padding the last byte."""

    if not bits:
        return b""
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big")


_BYTE_BITS = np.array([format(i, "08b") for i in range(256)])


def bytes_to_bits(data: bytes) -> str:
    if not data:
        return ""
    return "".join(_BYTE_BITS[np.frombuffer(data, dtype=np.uint8)].tolist())


class BitWriter:
    """Accumulate bit text and hand out whole bytes as they become available."""

    def __init__(self) -> None:
        self._parts: List[str] = []
        self._size = 0
        self._written_bits = 0

    @property
    def bit_length(self) -> int:
        """Bits written so far, padding excluded."""

        return self._written_bits

    @property
    def pending_bits(self) -> int:
        return self._size

    def write_bits(self, bits: str) -> None:
        if bits:
            self._parts.append(bits)
            self._size += len(bits)
            self._written_bits += len(bits)

    def write_gamma(self, n: int) -> None:
        self.write_bits(gamma_code(n))

    def take_bytes(self) -> bytes:
        """Return every complete byte written so far, keeping the remainder."""

        if self._size < 8:
            return b""
        text = "".join(self._parts)
        whole = len(text) - len(text) % 8
        rest = text[whole:]
        self._parts = [rest] if rest else []
        self._size = len(rest)
        return int(text[:whole], 2).to_bytes(whole // 8, "big")

    def flush(self) -> bytes:
        """Return the remaining bytes, zero padding the final partial byte."""

        text = "".join(self._parts)
        self._parts = []
        self._size = 0
        return bits_to_bytes(text)


Source = Union[bytes, bytearray, memoryview, Iterable[bytes]]


class BitReader:
    """Incremental reader over a byte string or an iterable of byte chunks."""

    _COMPACT_AT = 1 << 20

    def __init__(self, source: Source) -> None:
        if isinstance(source, (bytes, bytearray, memoryview)):
            self._chunks: Iterator[bytes] = iter([bytes(source)])
        else:
            self._chunks = iter(source)
        self._buffer = ""
        self._pos = 0
        self._consumed = 0
        self._exhausted = False

    @property
    def position(self) -> int:
        """Absolute bit offset of the next unread bit."""

        return self._consumed + self._pos

    def _pull(self) -> bool:
        if self._exhausted:
            return False
        chunk: Optional[bytes] = next(self._chunks, None)
        if chunk is None:
            self._exhausted = True
            return False
        if self._pos >= self._COMPACT_AT:
            self._consumed += self._pos
            self._buffer = self._buffer[self._pos :]
            self._pos = 0
        self._buffer += bytes_to_bits(chunk)
        return True

    def _ensure(self, count: int) -> None:
        while len(self._buffer) - self._pos < count:
            if not self._pull():
                raise DecodeError("unexpected end of stream")

    def read_bits(self, count: int) -> str:
        self._ensure(count)
        bits = self._buffer[self._pos : self._pos + count]
        self._pos += count
        return bits

    def read_gamma(self) -> int:
        while True:
            one = self._buffer.find("1", self._pos)
            if one >= 0:
                break
            if not self._pull():
                raise DecodeError("stream ended inside an Elias-gamma prefix")
        zeros = one - self._pos
        self._ensure(2 * zeros + 1)
        one = self._pos + zeros
        value = int(self._buffer[one : one + zeros + 1], 2)
        self._pos = one + zeros + 1
        return value

    def finish(self) -> None:
        """Check that only zero padding (less than one byte) remains."""

        while self._pull():
            pass
        rest = self._buffer[self._pos :]
        if len(rest) >= 8 or "1" in rest:
            raise DecodeError(f"{len(rest)} trailing bits after the end of the stream")
        self._pos = len(self._buffer)
