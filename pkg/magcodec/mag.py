"""Simple multiaspect graphs: companion tuples, composite vertices and edges.

A simple MAG is fully described by its companion tuple (the list of aspect
sizes) and the set of present composite edges. The edge set is stored as a
bitset addressed by the triangular edge index of :mod:`magcodec.indexing`, so
it can never name anything outside the space of possible composite edges.
Aspect elements are always ``{1, ..., size}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .core.config import get_settings
from .core.errors import MagValidationError, SelfLoopError, SizeCapExceededError


@dataclass(frozen=True)
class CompanionTuple:
    """Ordered aspect sizes ``(|A[1]|, ..., |A[p]|)``."""

    sizes: Tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes:
            raise MagValidationError("a companion tuple needs at least one aspect")
        for position, size in enumerate(sizes, start=1):
            if size < 1:
                raise MagValidationError(f"aspect {position} has size {size}; sizes must be >= 1")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "CompanionTuple":
        """Build a tuple from whitespace or comma separated sizes (``"2 1 2"``)."""

        tokens = text.replace(",", " ").split()
        try:
            return cls(tuple(int(token) for token in tokens))
        except ValueError as exc:
            if isinstance(exc, MagValidationError):
                raise
            raise MagValidationError(f"cannot parse companion tuple from {text!r}") from exc

    @property
    def order(self) -> int:
        return len(self.sizes)

    @property
    def num_composite_vertices(self) -> int:
        return math.prod(self.sizes)

    @property
    def num_possible_edges(self) -> int:
        n = self.num_composite_vertices
        return n * (n - 1) // 2

    @property
    def is_uniform(self) -> bool:
        return len(set(self.sizes)) == 1

    def check_cap(self, cap: Optional[int] = None) -> "CompanionTuple":
        """Raise :class:`SizeCapExceededError` when ``|E_c|`` exceeds *cap* bits."""

        limit = get_settings().size_cap_bits if cap is None else cap
        edges = self.num_possible_edges
        if edges > limit:
            raise SizeCapExceededError(edges, limit)
        return self

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.sizes)


@dataclass(frozen=True)
class CompositeVertex:
    """A p-tuple of 1-based aspect coordinates."""

    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def validate(self, tau: CompanionTuple) -> "CompositeVertex":
        if len(self.coords) != tau.order:
            raise MagValidationError(
                f"composite vertex {self.coords} has arity {len(self.coords)}, expected {tau.order}"
            )
        for position, (coord, size) in enumerate(zip(self.coords, tau.sizes), start=1):
            if not 1 <= coord <= size:
                raise MagValidationError(
                    f"coordinate {coord} of aspect {position} is outside 1..{size}"
                )
        return self

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class CompositeEdge:
    """Unordered pair of distinct composite vertices, stored in canonical order.

    ``u`` is the endpoint with the smaller vertex index. Direct construction only
    rejects self-loops; use :meth:`of` to build a canonical edge from endpoints
    given in any order.
    """

    u: CompositeVertex
    v: CompositeVertex

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise SelfLoopError(f"composite edge {self.u.coords} -- {self.v.coords} is a self-loop")

    @classmethod
    def of(cls, tau: CompanionTuple, first: Sequence[int] | CompositeVertex, second: Sequence[int] | CompositeVertex) -> "CompositeEdge":
        from .indexing import vertex_to_index

        a = first if isinstance(first, CompositeVertex) else CompositeVertex(tuple(first))
        b = second if isinstance(second, CompositeVertex) else CompositeVertex(tuple(second))
        ia = vertex_to_index(tau, a)
        ib = vertex_to_index(tau, b)
        if ia == ib:
            raise SelfLoopError(f"composite edge {a.coords} -- {b.coords} is a self-loop")
        return cls(a, b) if ia < ib else cls(b, a)

    @property
    def origin(self) -> CompositeVertex:
        return self.u

    @property
    def destination(self) -> CompositeVertex:
        return self.v


@dataclass(frozen=True)
class BinarySignature:
    """A bit string ``x_1 ... x_p`` describing which aspects are non-trivial."""

    bits: str

    def __post_init__(self) -> None:
        bits = "".join(str(b) for b in self.bits) if not isinstance(self.bits, str) else self.bits
        if not bits or set(bits) - {"0", "1"}:
            raise MagValidationError(f"invalid bit string {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @property
    def ones(self) -> int:
        return self.bits.count("1")

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits


@dataclass(frozen=True)
class SimpleMag:
    """Companion tuple plus a packed (MSB-first) bitset over ``E_c``."""

    tau: CompanionTuple
    edges: bytes

    def __post_init__(self) -> None:
        expected = (self.tau.num_possible_edges + 7) // 8
        if len(self.edges) != expected:
            raise MagValidationError(
                f"edge bitset holds {len(self.edges)} bytes, expected {expected} for |E_c| = {self.tau.num_possible_edges}"
            )
        spare = expected * 8 - self.tau.num_possible_edges
        if spare and self.edges[-1] & ((1 << spare) - 1):
            raise MagValidationError("edge bitset has bits set beyond |E_c|")
        object.__setattr__(self, "edges", bytes(self.edges))

    @property
    def n_bits(self) -> int:
        return self.tau.num_possible_edges

    @property
    def num_edges(self) -> int:
        return int(np.unpackbits(np.frombuffer(self.edges, dtype=np.uint8)).sum())

    def has_edge(self, index: int) -> bool:
        if not 0 <= index < self.n_bits:
            raise MagValidationError(f"edge index {index} is outside [0, {self.n_bits})")
        return bool(self.edges[index >> 3] & (0x80 >> (index & 7)))

    def flags(self) -> np.ndarray:
        """Unpacked presence flags, one uint8 per possible edge."""

        return np.unpackbits(np.frombuffer(self.edges, dtype=np.uint8), count=self.n_bits)

    def edge_indices(self) -> List[int]:
        return np.flatnonzero(self.flags()).tolist()


def pack_edge_indices(n_bits: int, edge_indices: Iterable[int]) -> bytes:
    """Pack edge indices into an MSB-first bitset of ``n_bits`` bits."""

    indices = np.fromiter((int(j) for j in edge_indices), dtype=np.int64)
    if indices.size and (indices.min() < 0 or indices.max() >= n_bits):
        bad = int(indices[(indices < 0) | (indices >= n_bits)][0])
        raise MagValidationError(f"edge index {bad} is outside [0, {n_bits})")
    buffer = np.zeros((n_bits + 7) // 8, dtype=np.uint8)
    np.bitwise_or.at(buffer, indices >> 3, (0x80 >> (indices & 7)).astype(np.uint8))
    return buffer.tobytes()


def make_mag(tau: CompanionTuple, edge_indices: Iterable[int], *, cap: Optional[int] = None) -> SimpleMag:
    """Build a :class:`SimpleMag` with exactly the given edges present.

    Duplicated indices collapse; out-of-range indices raise
    :class:`MagValidationError`, oversized spaces :class:`SizeCapExceededError`.
    """

    tau.check_cap(cap)
    return SimpleMag(tau, pack_edge_indices(tau.num_possible_edges, edge_indices))


def empty_mag(tau: CompanionTuple, *, cap: Optional[int] = None) -> SimpleMag:
    tau.check_cap(cap)
    return SimpleMag(tau, bytes((tau.num_possible_edges + 7) // 8))


BitsLike = Union[str, Sequence[int], BinarySignature]


def _as_bits(w: BitsLike) -> str:
    if isinstance(w, BinarySignature):
        return w.bits
    bits = w if isinstance(w, str) else "".join(str(int(b)) for b in w)
    if not bits:
        raise MagValidationError("the bit string w must be non-empty")
    if set(bits) - {"0", "1"}:
        raise MagValidationError(f"w must contain only 0 and 1, got {bits!r}")
    return bits


def tau_from_bitstring(w: BitsLike, *, cap: Optional[int] = None) -> CompanionTuple:
    """Aspect i is ``{1, 2}`` when the i-th digit of w is 1 and ``{1}`` otherwise."""

    bits = _as_bits(w)
    return CompanionTuple(tuple(2 if bit == "1" else 1 for bit in bits)).check_cap(cap)


SizeFunction = Union[int, Mapping[int, int], Callable[[int], int]]


def evaluate_size_function(f: SizeFunction, p: int, name: str) -> int:
    """Evaluate a size function supplied as a constant, a lookup table or a callable."""

    if isinstance(f, bool):
        raise MagValidationError(f"{name} must be an integer function, not a boolean")
    if isinstance(f, int):
        return f
    if isinstance(f, Mapping):
        if p not in f:
            raise MagValidationError(f"{name} has no value for p = {p}")
        return int(f[p])
    return int(f(p))


def _general_sizes(p: int, f1: SizeFunction, f2: SizeFunction) -> Tuple[int, int]:
    low = evaluate_size_function(f1, p, "f1")
    delta = evaluate_size_function(f2, p, "f2")
    if low < 1:
        raise MagValidationError(f"f1({p}) = {low}; aspect sizes must be >= 1")
    if delta == 0:
        raise MagValidationError(f"f2({p}) = 0 makes both aspect sizes equal")
    if low + delta < 1:
        raise MagValidationError(f"f1({p}) + f2({p}) = {low + delta}; aspect sizes must be >= 1")
    return low, low + delta


def tau_from_bitstring_general(
    w: BitsLike, f1: SizeFunction, f2: SizeFunction, *, cap: Optional[int] = None
) -> CompanionTuple:
    """Aspect i has ``f1(p) + f2(p)`` elements when w[i] is 1 and ``f1(p)`` otherwise."""

    bits = _as_bits(w)
    low, high = _general_sizes(len(bits), f1, f2)
    return CompanionTuple(tuple(high if bit == "1" else low for bit in bits)).check_cap(cap)


def bitstring_from_tau_general(tau: CompanionTuple, f1: SizeFunction, f2: SizeFunction) -> BinarySignature:
    """Invert :func:`tau_from_bitstring_general` for known f1 and f2."""

    low, high = _general_sizes(tau.order, f1, f2)
    bits = []
    for position, size in enumerate(tau.sizes, start=1):
        if size == high:
            bits.append("1")
        elif size == low:
            bits.append("0")
        else:
            raise MagValidationError(
                f"aspect {position} has size {size}, which neither f1 ({low}) nor f1 + f2 ({high}) produces"
            )
    return BinarySignature("".join(bits))


def signature_of(tau: CompanionTuple) -> BinarySignature:
    """Bit i is 1 iff aspect i has at least two elements."""

    return BinarySignature("".join("1" if size >= 2 else "0" for size in tau.sizes))
