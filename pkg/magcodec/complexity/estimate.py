"""Compressed-size estimates, in bits, for one compressor at a time."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .compressors import Compressor, get_compressor

CompressorLike = Union[Compressor, str]
ChunkFactory = Callable[[], Iterable[bytes]]


@dataclass(frozen=True)
class ComplexityEstimate:
    raw_len: int
    compressed_len: int
    compressor: str


def _resolve(c: CompressorLike) -> Compressor:
    return get_compressor(c) if isinstance(c, str) else c


def estimate(c: CompressorLike, data: bytes) -> ComplexityEstimate:
    compressor = _resolve(c)
    return ComplexityEstimate(8 * len(data), 8 * len(compressor.compress(data)), compressor.name)


class _Counted:
    def __init__(self, chunks: Iterable[bytes]) -> None:
        self._chunks = chunks
        self.size = 0

    def __iter__(self) -> Iterator[bytes]:
        for chunk in self._chunks:
            self.size += len(chunk)
            yield chunk


def estimate_stream(c: CompressorLike, chunks: Iterable[bytes]) -> ComplexityEstimate:
    """Like :func:`estimate` for data handed over in chunks (never joined for ``lz``)."""

    compressor = _resolve(c)
    counted = _Counted(chunks)
    compressed = compressor.compressed_size(counted)
    return ComplexityEstimate(8 * counted.size, 8 * compressed, compressor.name)


def estimate_conditional(c: CompressorLike, target: bytes, given: bytes) -> int:
    """``max(0, C(given || target) - C(given))`` in bits."""

    compressor = _resolve(c)
    joint = 8 * len(compressor.compress(given + target))
    alone = 8 * len(compressor.compress(given))
    return max(0, joint - alone)


def estimate_conditional_stream(c: CompressorLike, target: ChunkFactory, given: ChunkFactory) -> int:
    """Streaming :func:`estimate_conditional`; each factory must yield a fresh chunk iterator."""

    compressor = _resolve(c)

    def joint() -> Iterator[bytes]:
        yield from given()
        yield from target()

    return max(0, 8 * compressor.compressed_size(joint()) - 8 * compressor.compressed_size(given()))
