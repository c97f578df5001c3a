"""Bijective linearizations of composite vertices and composite edges.

Vertices use a mixed-radix order in which the first aspect varies fastest:
``index = sum((coords[i] - 1) * prod(sizes[:i]))``. Edges ``{a, b}`` with
``a < b`` use the strict-lower triangular index ``b * (b - 1) / 2 + a``. This
single ordering is shared by the characteristic string, the edge set string
and the classical graph, so every representation enumerates ``E_c`` in the
same order. All conversions use integer arithmetic only.
"""
from __future__ import annotations

import math
from typing import Iterator, NewType, Tuple

import numpy as np

from .core.errors import MagValidationError, SelfLoopError
from .mag import CompanionTuple, CompositeEdge, CompositeVertex

VertexIndex = NewType("VertexIndex", int)
EdgeIndex = NewType("EdgeIndex", int)


def vertex_to_index(tau: CompanionTuple, v: CompositeVertex) -> VertexIndex:
    v.validate(tau)
    index = 0
    stride = 1
    for coord, size in zip(v.coords, tau.sizes):
        index += (coord - 1) * stride
        stride *= size
    return VertexIndex(index)


def index_to_vertex(tau: CompanionTuple, i: int) -> CompositeVertex:
    n = tau.num_composite_vertices
    if not 0 <= i < n:
        raise MagValidationError(f"vertex index {i} is outside [0, {n})")
    coords = []
    rest = int(i)
    for size in tau.sizes:
        rest, digit = divmod(rest, size)
        coords.append(digit + 1)
    return CompositeVertex(tuple(coords))


def triangular(b: int) -> int:
    return b * (b - 1) // 2


def pair_to_edge_index(a: int, b: int) -> EdgeIndex:
    """Triangular index of the unordered pair ``{a, b}`` of vertex indices."""

    if a == b:
        raise SelfLoopError(f"vertex pair ({a}, {b}) is a self-loop")
    low, high = (a, b) if a < b else (b, a)
    if low < 0:
        raise MagValidationError(f"vertex index {low} is negative")
    return EdgeIndex(triangular(high) + low)


def edge_index_to_pair(j: int) -> Tuple[int, int]:
    """Inverse of :func:`pair_to_edge_index`; returns ``(a, b)`` with ``a < b``."""

    if j < 0:
        raise MagValidationError(f"edge index {j} is negative")
    b = (1 + math.isqrt(1 + 8 * j)) // 2
    while triangular(b) > j:
        b -= 1
    while triangular(b + 1) <= j:
        b += 1
    return j - triangular(b), b


def edge_to_index(tau: CompanionTuple, e: CompositeEdge) -> EdgeIndex:
    a = vertex_to_index(tau, e.u)
    b = vertex_to_index(tau, e.v)
    return pair_to_edge_index(a, b)


def index_to_edge(tau: CompanionTuple, j: int) -> CompositeEdge:
    total = tau.num_possible_edges
    if not 0 <= j < total:
        raise MagValidationError(f"edge index {j} is outside [0, {total})")
    a, b = edge_index_to_pair(j)
    return CompositeEdge(index_to_vertex(tau, a), index_to_vertex(tau, b))


def vertex_table(tau: CompanionTuple) -> np.ndarray:
    """All composite vertices in index order, as an ``(n, p)`` array of 1-based coordinates."""

    n = tau.num_composite_vertices
    digits = np.unravel_index(np.arange(n, dtype=np.int64), tau.sizes, order="F")
    return np.stack(digits, axis=1).astype(np.int64) + 1


def iter_rows(n: int, start: int = 1) -> Iterator[Tuple[int, int]]:
    """Yield ``(b, first_edge_index)`` for each row of the triangular enumeration.

    Row ``b`` holds the edges ``{a, b}`` for ``a = 0 .. b - 1`` and starts at
    edge index ``b * (b - 1) / 2``.
    """

    for b in range(start, n):
        yield b, triangular(b)
