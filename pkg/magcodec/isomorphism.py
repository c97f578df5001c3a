"""MAG <-> classical graph correspondence.

The graph isomorphic to a simple MAG has one vertex per composite vertex; the
bijection is the canonical linearization (vertex index + 1 as the graph
label), so the edge bitset carries over verbatim and both objects share the
same characteristic string.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import networkx as nx
import numpy as np

from .core.errors import MagValidationError
from .indexing import edge_index_to_pair, iter_rows, pair_to_edge_index
from .mag import CompanionTuple, SimpleMag, pack_edge_indices


@dataclass(frozen=True)
class ClassicalGraph:
    """Simple undirected graph on ``{1, ..., n}`` with a triangular-index bitset."""

    n: int
    edges: bytes

    def __post_init__(self) -> None:
        if self.n < 1:
            raise MagValidationError(f"a classical graph needs at least one vertex, got n = {self.n}")
        expected = (self.n_bits + 7) // 8
        if len(self.edges) != expected:
            raise MagValidationError(f"edge bitset holds {len(self.edges)} bytes, expected {expected}")
        object.__setattr__(self, "edges", bytes(self.edges))

    @classmethod
    def from_edge_indices(cls, n: int, edge_indices: Iterable[int]) -> "ClassicalGraph":
        return cls(n, pack_edge_indices(n * (n - 1) // 2, edge_indices))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "ClassicalGraph":
        """Build from 1-based vertex label pairs."""

        indices = []
        for first, second in pairs:
            if not (1 <= first <= n and 1 <= second <= n):
                raise MagValidationError(f"edge ({first}, {second}) uses a label outside 1..{n}")
            indices.append(pair_to_edge_index(first - 1, second - 1))
        return cls.from_edge_indices(n, indices)

    @property
    def n_bits(self) -> int:
        return self.n * (self.n - 1) // 2

    def flags(self) -> np.ndarray:
        return np.unpackbits(np.frombuffer(self.edges, dtype=np.uint8), count=self.n_bits)

    def edge_indices(self) -> List[int]:
        return np.flatnonzero(self.flags()).tolist()

    def pairs(self) -> List[tuple]:
        """Edges as 1-based label pairs ``(low, high)``."""

        out = []
        for j in self.edge_indices():
            a, b = edge_index_to_pair(j)
            out.append((a + 1, b + 1))
        return out

    def degrees(self) -> List[int]:
        counts = np.zeros(self.n, dtype=np.int64)
        for a, b in self.pairs():
            counts[a - 1] += 1
            counts[b - 1] += 1
        return counts.tolist()

    def relabel(self, f: Sequence[int]) -> "ClassicalGraph":
        """Apply the 0-based vertex permutation *f* (vertex ``i`` becomes ``f[i]``)."""

        perm = _as_permutation(f, self.n)
        indices = [pair_to_edge_index(int(perm[a - 1]), int(perm[b - 1])) for a, b in self.pairs()]
        return ClassicalGraph.from_edge_indices(self.n, indices)

    def as_mag(self) -> SimpleMag:
        """The graph as a first-order MAG with ``tau = (n,)``."""

        return SimpleMag(CompanionTuple((self.n,)), self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.pairs())
        return graph


def _as_permutation(f: Sequence[int], n: int) -> np.ndarray:
    perm = np.asarray(list(f), dtype=np.int64)
    if perm.shape != (n,):
        raise MagValidationError(f"bijection must list {n} images, got {perm.size}")
    if perm.size and (perm.min() < 0 or perm.max() >= n or np.bincount(perm, minlength=n).max() != 1):
        raise MagValidationError("f is not a permutation of [0, n)")
    return perm


def canonical_bijection(tau: CompanionTuple) -> List[int]:
    """The identity witness: composite vertex index ``i`` maps to graph vertex ``i``."""

    return list(range(tau.num_composite_vertices))


def mag_to_graph(mag: SimpleMag) -> ClassicalGraph:
    return ClassicalGraph(mag.tau.num_composite_vertices, mag.edges)


def graph_to_mag(g: ClassicalGraph, tau: CompanionTuple, *, cap: Optional[int] = None) -> SimpleMag:
    if tau.num_composite_vertices != g.n:
        raise MagValidationError(
            f"tau ({tau}) has {tau.num_composite_vertices} composite vertices but the graph has {g.n}"
        )
    tau.check_cap(cap)
    return SimpleMag(tau, g.edges)


def check_mag_graph_isomorphism(mag: SimpleMag, g: ClassicalGraph, f: Sequence[int]) -> bool:
    """True iff ``e in E(mag) <=> (f(u), f(v)) in E(g)`` for every possible composite edge."""

    n = mag.tau.num_composite_vertices
    if g.n != n:
        raise MagValidationError(f"the MAG has {n} composite vertices but the graph has {g.n}")
    perm = _as_permutation(f, n)
    mag_flags = mag.flags()
    graph_flags = g.flags()
    for b, start in iter_rows(n):
        fa = perm[:b]
        fb = perm[b]
        low = np.minimum(fa, fb)
        high = np.maximum(fa, fb)
        images = high * (high - 1) // 2 + low
        if not np.array_equal(mag_flags[start : start + b], graph_flags[images]):
            return False
    return True
