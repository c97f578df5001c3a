"""Seeded worst-case and uniform MAG families.

The bit string ``w`` that drives a companion tuple stands in for an initial
segment of a random sequence: it is read from a SHAKE-256 keystream keyed by
the seed, so ``w_bits(seed, p)`` is always the length-``p`` prefix of one
stream and a sweep over ``p`` walks growing initial segments.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple

import numpy as np

from ..bits import bytes_to_bits
from ..core.config import get_settings
from ..core.errors import DegenerateSpaceError, ExperimentError, MagValidationError
from ..isomorphism import ClassicalGraph, mag_to_graph
from ..mag import SimpleMag, make_mag, tau_from_bitstring

LOGGER = logging.getLogger("magcodec.experiments")

Topology = Literal["trivial", "random_density"]

_W_DOMAIN = b"magcodec/w/"
_FLAGS_DOMAIN = b"magcodec/flags/"
_SEED_SPACE = 2**64


def _seed_bytes(seed: int) -> bytes:
    if not 0 <= seed < _SEED_SPACE:
        raise MagValidationError(f"seed {seed} is not a 64-bit unsigned integer")
    return seed.to_bytes(8, "big")


def w_bits(seed: int, p: int) -> str:
    """The first *p* bits of the keystream for *seed*."""

    if p < 1:
        raise MagValidationError(f"p must be >= 1, got {p}")
    digest = hashlib.shake_256(_W_DOMAIN + _seed_bytes(seed)).digest((p + 7) // 8)
    return bytes_to_bits(digest)[:p]


def random_flags(seed: int, w: str, n_bits: int, density: float) -> np.ndarray:
    """Presence flags with ``P(flag = 1) = density``, drawn from a keystream keyed by seed and w."""

    if not 0.0 <= density <= 1.0:
        raise MagValidationError(f"density must lie in [0, 1], got {density}")
    if n_bits == 0:
        return np.zeros(0, dtype=np.uint8)
    key = _FLAGS_DOMAIN + _seed_bytes(seed) + w.encode("ascii")
    draws = np.frombuffer(hashlib.shake_256(key).digest(4 * n_bits), dtype=">u4")
    threshold = int(round(density * 2**32))
    return (draws.astype(np.uint64) < threshold).astype(np.uint8)


@dataclass(frozen=True)
class SeedChoice:
    base_seed: int
    effective_seed: int
    attempts: int
    ones: Tuple[int, ...]


def _acceptable(ones: Sequence[int], max_ones: int, require_growth: bool) -> bool:
    if ones[0] < 1 or ones[-1] > max_ones:
        return False
    if require_growth:
        return all(b > a for a, b in zip(ones, ones[1:]))
    return True


def select_seed(
    base_seed: int,
    p_values: Sequence[int],
    *,
    max_ones: Optional[int] = None,
    require_growth: bool = True,
    attempts: Optional[int] = None,
) -> SeedChoice:
    """Rejection-sample ``base_seed, base_seed + 1, ...`` until the prefixes fit.

    A seed is accepted when every ``w_p`` has at least one ``1``, the longest
    prefix has at most *max_ones* ones and, with *require_growth*, the ones
    count strictly increases along the sorted p values.
    """

    settings = get_settings()
    limit = settings.max_ones if max_ones is None else max_ones
    budget = settings.seed_attempts if attempts is None else attempts
    orders = sorted(set(p_values))
    if not orders:
        raise MagValidationError("at least one p value is required")

    for k in range(budget):
        seed = (base_seed + k) % _SEED_SPACE
        w = w_bits(seed, orders[-1])
        ones = tuple(w[:p].count("1") for p in orders)
        if _acceptable(ones, limit, require_growth):
            if k:
                LOGGER.info("seed %d rejected %d time(s); using %d", base_seed, k, seed)
            return SeedChoice(base_seed, seed, k + 1, ones)
        if k and k % 1024 == 0:
            LOGGER.warning("seed selection for base %d still rejecting after %d attempts", base_seed, k)
    raise ExperimentError(
        f"no seed in [{base_seed}, {base_seed + budget}) satisfies ones <= {limit} for p = {orders}"
        + (" with strictly growing ones" if require_growth else "")
    )


def build_from_bits(
    w: str,
    *,
    topology: Topology = "trivial",
    density: float = 0.5,
    seed: int = 0,
    cap: Optional[int] = None,
) -> Tuple[SimpleMag, ClassicalGraph]:
    """The MAG whose companion tuple is driven by *w*, plus its isomorphic graph."""

    tau = tau_from_bitstring(w, cap=cap)
    if tau.num_composite_vertices < 2:
        raise DegenerateSpaceError(f"w = {w!r} has no 1s, so the space has a single composite vertex")
    if topology == "trivial":
        mag = make_mag(tau, [0], cap=cap)
    elif topology == "random_density":
        flags = random_flags(seed, w, tau.num_possible_edges, density)
        mag = SimpleMag(tau, np.packbits(flags).tobytes())
    else:
        raise MagValidationError(f"unknown topology {topology!r}")
    return mag, mag_to_graph(mag)


def build_worst_case(
    seed: int,
    p: int,
    *,
    topology: Topology = "trivial",
    density: float = 0.5,
    cap: Optional[int] = None,
) -> Tuple[SimpleMag, ClassicalGraph, str]:
    """Non-uniform MAG from ``w = w_bits(seed, p)``; trivial topology sets only edge 0."""

    w = w_bits(seed, p)
    mag, graph = build_from_bits(w, topology=topology, density=density, seed=seed, cap=cap)
    return mag, graph, w


def build_uniform(
    p: int,
    *,
    topology: Topology = "trivial",
    density: float = 0.5,
    seed: int = 0,
    cap: Optional[int] = None,
) -> Tuple[SimpleMag, ClassicalGraph, str]:
    """Uniform space ``{1, 2}^p`` (``w`` all ones)."""

    w = "1" * p
    mag, graph = build_from_bits(w, topology=topology, density=density, seed=seed, cap=cap)
    return mag, graph, w
