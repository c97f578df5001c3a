"""Bit-exact encoders and decoders for the three MAG string representations.

* characteristic string: one bit per possible composite edge, in edge index
  order (bit ``j`` set iff edge ``j`` is present);
* composite edge set string: a self-delimiting stream
  ``gamma(p) gamma(count + 1)`` followed by one record per possible edge,
  ``gamma(u_1) .. gamma(u_p) gamma(v_1) .. gamma(v_p) gamma(z + 1)``, where
  ``u`` and ``v`` are the canonical endpoints and ``z`` the presence flag;
* encoded companion tuple: ``gamma(p) gamma(|A[1]|) .. gamma(|A[p]|)``.

Streams are MSB first and zero padded only at the very end.
"""
from __future__ import annotations

import math
from itertools import product
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .bits import BitReader, BitWriter, Source, bits_to_bytes, bytes_to_bits, decode_gamma, gamma_code
from .core.config import get_settings
from .core.errors import DecodeError, MagValidationError
from .indexing import iter_rows, vertex_table
from .mag import CompanionTuple, SimpleMag, make_mag


# --- pairing -------------------------------------------------------------------


def pair(x: int, y: int) -> int:
    """Cantor pairing ``(x + y)(x + y + 1) / 2 + y``."""

    if x < 0 or y < 0:
        raise MagValidationError(f"pairing is defined on non-negative integers, got ({x}, {y})")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> Tuple[int, int]:
    if z < 0:
        raise MagValidationError(f"cannot unpair negative integer {z}")
    s = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - s * (s + 1) // 2
    return s - y, y


def pair_tuple(values: Sequence[int]) -> int:
    """Right-nested pairing ``<a, b, c> = pair(a, pair(b, c))``."""

    if not values:
        raise MagValidationError("cannot pair an empty tuple")
    result = int(values[-1])
    for value in reversed(values[:-1]):
        result = pair(int(value), result)
    return result


def unpair_tuple(z: int, length: int) -> Tuple[int, ...]:
    if length < 1:
        raise MagValidationError("tuple length must be >= 1")
    values = []
    for _ in range(length - 1):
        head, z = unpair(z)
        values.append(head)
    values.append(z)
    return tuple(values)


# --- integers --------------------------------------------------------------------


def encode_int_prefix_free(n: int) -> str:
    return gamma_code(n)


def decode_int_prefix_free(bits: str, pos: int = 0) -> Tuple[int, int]:
    return decode_gamma(bits, pos)


# --- characteristic string ------------------------------------------------------------


@dataclass(frozen=True)
class CharacteristicString:
    """Packed bits of length ``|E_c|``; bit ``j`` corresponds to edge index ``j``."""

    data: bytes
    length: int

    def __post_init__(self) -> None:
        if len(self.data) != (self.length + 7) // 8:
            raise MagValidationError(
                f"characteristic string of {self.length} bits needs {(self.length + 7) // 8} bytes, got {len(self.data)}"
            )

    @classmethod
    def from_bits(cls, bits: str) -> "CharacteristicString":
        if set(bits) - {"0", "1"}:
            raise MagValidationError("characteristic strings contain only 0 and 1")
        return cls(bits_to_bytes(bits), len(bits))

    def to_bits(self) -> str:
        return bytes_to_bits(self.data)[: self.length]

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return self.to_bits()


def encode_characteristic(mag: SimpleMag) -> CharacteristicString:
    return CharacteristicString(mag.edges, mag.n_bits)


def decode_characteristic(tau: CompanionTuple, x: CharacteristicString) -> SimpleMag:
    expected = tau.num_possible_edges
    if x.length != expected:
        raise MagValidationError(
            f"characteristic string has {x.length} bits but tau = ({tau}) has |E_c| = {expected}"
        )
    tau.check_cap()
    return SimpleMag(tau, x.data)


# --- composite edge set string ------------------------------------------------------------


@dataclass(frozen=True)
class EdgeSetString:
    """A self-delimiting composite edge set stream."""

    data: bytes

    def __len__(self) -> int:
        return len(self.data)


Record = Tuple[Tuple[int, ...], Tuple[int, ...], int]


class EdgeSetStringEncoder:
    """Streams the edge set string of a MAG in chunks of roughly ``chunk_bits`` bits.

    Working state is the table of vertex codes plus a slice of one row of the
    triangular enumeration; presence flags are unpacked from the packed
    characteristic string a slice at a time.
    """

    _SLICE = 1024

    def __init__(self, mag: SimpleMag, *, chunk_bits: Optional[int] = None) -> None:
        self._mag = mag
        self._chunk_bits = chunk_bits or get_settings().chunk_bits

    def _vertex_codes(self) -> List[str]:
        # first aspect varies fastest, so the product runs over the aspects reversed
        per_aspect = [[gamma_code(value) for value in range(1, size + 1)] for size in reversed(self._mag.tau.sizes)]
        return ["".join(reversed(codes)) for codes in product(*per_aspect)]

    def _row_flags(self, start: int, count: int) -> np.ndarray:
        lo, hi = start // 8, (start + count + 7) // 8
        bits = np.unpackbits(np.frombuffer(self._mag.edges, dtype=np.uint8, count=hi - lo, offset=lo))
        offset = start - 8 * lo
        return bits[offset : offset + count]

    def chunks(self) -> Iterator[bytes]:
        tau = self._mag.tau
        n = tau.num_composite_vertices
        writer = BitWriter()
        writer.write_gamma(tau.order)
        writer.write_gamma(tau.num_possible_edges + 1)
        if n < 2:
            yield writer.flush()
            return

        vertex_codes = self._vertex_codes()
        absent, present = gamma_code(1), gamma_code(2)
        for b, start in iter_rows(n):
            tail_absent = vertex_codes[b] + absent
            tails = (tail_absent, vertex_codes[b] + present)
            for a in range(0, b, self._SLICE):
                stop = min(a + self._SLICE, b)
                row_flags = self._row_flags(start + a, stop - a)
                if not row_flags.any():
                    writer.write_bits(tail_absent.join(vertex_codes[a:stop]) + tail_absent)
                else:
                    writer.write_bits(
                        "".join(map(str.__add__, vertex_codes[a:stop], [tails[z] for z in row_flags.tolist()]))
                    )
                if writer.pending_bits >= self._chunk_bits:
                    yield writer.take_bytes()
        yield writer.flush()

    def encode(self) -> EdgeSetString:
        return EdgeSetString(b"".join(self.chunks()))


def encode_edge_set_string(mag: SimpleMag) -> EdgeSetString:
    return EdgeSetStringEncoder(mag).encode()


def edge_set_string_bits(mag: SimpleMag) -> str:
    """The edge set string as unpadded bit text."""

    data = b"".join(EdgeSetStringEncoder(mag).chunks())
    return bytes_to_bits(data)[: edge_set_bit_length(mag)]


def edge_set_bit_length(mag: SimpleMag) -> int:
    """Unpadded length of the edge set string in bits."""

    tau = mag.tau
    n = tau.num_composite_vertices
    header = len(gamma_code(tau.order)) + len(gamma_code(tau.num_possible_edges + 1))
    if n < 2:
        return header
    code_lengths = np.array([len(gamma_code(v)) for v in range(1, max(tau.sizes) + 1)], dtype=np.int64)
    vertex_lengths = code_lengths[vertex_table(tau) - 1].sum(axis=1)
    # each vertex appears in n - 1 records
    total = header + int(vertex_lengths.sum()) * (n - 1)
    return total + tau.num_possible_edges + 2 * mag.num_edges


class EdgeSetStringDecoder:
    """Incremental decoder yielding ``(u, v, z)`` records in stream order."""

    def __init__(self, source: Source) -> None:
        self._reader = BitReader(source)
        self.order: Optional[int] = None
        self.count: Optional[int] = None

    def read_header(self) -> Tuple[int, int]:
        if self.order is None:
            self.order = self._reader.read_gamma()
            self.count = self._reader.read_gamma() - 1
        return self.order, self.count  # type: ignore[return-value]

    def records(self) -> Iterator[Record]:
        p, count = self.read_header()
        read = self._reader.read_gamma
        for _ in range(count):
            u = tuple(read() for _ in range(p))
            v = tuple(read() for _ in range(p))
            flag = read() - 1
            if flag not in (0, 1):
                raise DecodeError(f"presence flag decoded to {flag}; expected 0 or 1")
            yield u, v, flag
        self._reader.finish()


def _as_source(s: EdgeSetString | Source) -> Source:
    return s.data if isinstance(s, EdgeSetString) else s


def decode_edge_set_string(s: EdgeSetString | bytes) -> SimpleMag:
    """Rebuild a MAG from its edge set string alone.

    The companion tuple comes from a first pass (see
    :func:`magcodec.recovery.recover_signature`); a second pass checks that
    the records enumerate ``E_c`` in canonical order and collects the flags.
    """

    from .recovery import recover_signature

    data = _as_source(s)
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise MagValidationError("decoding needs the whole stream as bytes")
    recovered = recover_signature(EdgeSetString(bytes(data)), allow_degenerate=True)
    if recovered.sizes != recovered.maxima:
        raise DecodeError(
            f"aspect coordinates are not consecutive from 1: sizes {recovered.sizes}, maxima {recovered.maxima}"
        )
    tau = CompanionTuple(recovered.maxima)
    tau.check_cap()
    if recovered.record_count != tau.num_possible_edges:
        raise DecodeError(
            f"stream holds {recovered.record_count} records but the recovered tau ({tau}) has |E_c| = {tau.num_possible_edges}"
        )

    table = [tuple(row) for row in vertex_table(tau).tolist()]
    present: List[int] = []
    decoder = EdgeSetStringDecoder(bytes(data))
    rows = iter_rows(tau.num_composite_vertices)
    b, start = next(rows, (0, 0))
    a = 0
    for j, (u, v, flag) in enumerate(decoder.records()):
        if a == b:
            b, start = next(rows)
            a = 0
        if u != table[a] or v != table[b]:
            raise DecodeError(f"record {j} is {u} -- {v}; canonical order expects {table[a]} -- {table[b]}")
        if flag:
            present.append(start + a)
        a += 1

    return make_mag(tau, present)


def edge_set_records(s: EdgeSetString | Source) -> Iterator[Record]:
    return EdgeSetStringDecoder(_as_source(s)).records()


def flag_projection(s: EdgeSetString | Source) -> str:
    """The flags ``z_1 .. z_n`` of an edge set string, as bit text."""

    return "".join("1" if flag else "0" for _, _, flag in edge_set_records(s))


# --- companion tuple ----------------------------------------------------------------


@dataclass(frozen=True)
class EncodedTau:
    data: bytes


def encode_tau_bits(tau: CompanionTuple) -> str:
    return gamma_code(tau.order) + "".join(gamma_code(size) for size in tau.sizes)


def encode_tau(tau: CompanionTuple) -> EncodedTau:
    return EncodedTau(bits_to_bytes(encode_tau_bits(tau)))


def decode_tau(bits: EncodedTau | bytes | Iterable[bytes]) -> CompanionTuple:
    source = bits.data if isinstance(bits, EncodedTau) else bits
    reader = BitReader(source)
    p = reader.read_gamma()
    sizes = tuple(reader.read_gamma() for _ in range(p))
    reader.finish()
    return CompanionTuple(sizes)
