"""Recover the companion tuple signature from a composite edge set string alone.

The fold mirrors the recovery program: collect every endpoint that appears in
a record, gather the i-th coordinates of those endpoints into ``A_i``, take
``z_i = |A_i|`` and report bit ``i`` as 1 iff ``z_i >= 2``. Only the exhaustive
enumeration of ``E_c`` matters, never which presence flags are set.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Set, Tuple

from .bits import Source
from .codec import EdgeSetString, EdgeSetStringDecoder
from .core.errors import DecodeError, DegenerateSpaceError
from .mag import BinarySignature

LOGGER = logging.getLogger("magcodec.recovery")


@dataclass(frozen=True)
class RecoveryResult:
    sizes: Tuple[int, ...]
    signature: BinarySignature
    maxima: Tuple[int, ...]
    record_count: int
    degenerate: bool = False

    @property
    def order(self) -> int:
        return len(self.sizes)


def recover_signature(s: EdgeSetString | Source, *, allow_degenerate: bool = False) -> RecoveryResult:
    """Run the recovery fold over the records of *s*.

    A stream with no records (a single composite vertex) carries no aspect
    information: :class:`DegenerateSpaceError` is raised unless
    *allow_degenerate* is set, in which case the all-zero signature of the
    header's order is returned with ``degenerate=True``.
    """

    decoder = EdgeSetStringDecoder(s.data if isinstance(s, EdgeSetString) else s)
    p, count = decoder.read_header()
    if p < 1:
        raise DecodeError("edge set string declares order 0")

    aspects: List[Set[int]] = [set() for _ in range(p)]
    seen = 0
    for u, v, _flag in decoder.records():
        for values, a, b in zip(aspects, u, v):
            values.add(a)
            values.add(b)
        seen += 1

    if seen == 0:
        if not allow_degenerate:
            raise DegenerateSpaceError("the stream has no records, so fewer than two composite vertices appear")
        LOGGER.warning("edge set string of order %d has no records; reporting an all-zero signature", p)
        ones = (1,) * p
        return RecoveryResult(ones, BinarySignature("0" * p), ones, 0, degenerate=True)

    sizes = tuple(len(values) for values in aspects)
    maxima = tuple(max(values) for values in aspects)
    signature = BinarySignature("".join("1" if z >= 2 else "0" for z in sizes))
    return RecoveryResult(sizes, signature, maxima, seen)
