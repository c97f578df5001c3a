"""Distortion sweeps, the uniform-space control and the lemma check.

Each row is independent and deterministic in ``(seed, p, topology, density,
compressor)``, so rows can be measured in any order or in parallel and the
report is identical.
"""
from __future__ import annotations

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Iterator, List, Literal, Optional, Tuple

from ..codec import EdgeSetStringEncoder, encode_characteristic, encode_tau
from ..complexity import estimate, estimate_conditional_stream, estimate_stream, get_compressor
from ..core.errors import ExperimentError
from ..isomorphism import ClassicalGraph
from ..mag import SimpleMag, tau_from_bitstring
from ..recovery import recover_signature
from ..schemas import DistortionReport, DistortionRow, ExperimentConfig, LemmaRow
from .analysis import summarize
from .families import SeedChoice, build_uniform, build_worst_case, select_seed, w_bits
from .report import emit_all, make_report

LOGGER = logging.getLogger("magcodec.experiments")

Kind = Literal["sweep", "control-uniform", "lemma"]

# rows at or below this many possible edges also re-run signature recovery
RECOVERY_CHECK_LIMIT = 1 << 16


def measure_row(mag: SimpleMag, graph: ClassicalGraph, w: str, compressor: str) -> DistortionRow:
    """Encode every representation of *mag* and its graph and measure them."""

    c = get_compressor(compressor)
    x = encode_characteristic(mag)
    graph_mag = graph.as_mag()
    if encode_characteristic(graph_mag) != x:
        raise ExperimentError(f"p = {len(w)}: MAG and graph characteristic strings differ")

    tau = mag.tau
    if tau.num_possible_edges <= RECOVERY_CHECK_LIMIT:
        recovered = recover_signature(EdgeSetStringEncoder(mag).encode())
        if recovered.signature.bits != w:
            raise ExperimentError(f"recovered signature {recovered.signature} differs from w = {w}")

    def edges() -> Iterator[bytes]:
        return EdgeSetStringEncoder(mag).chunks()

    row = DistortionRow(
        p=tau.order,
        ones=w.count("1"),
        n_vertices=tau.num_composite_vertices,
        n_possible_edges=tau.num_possible_edges,
        c_x=estimate(c, x.data).compressed_len,
        c_edgeset=estimate_stream(c, edges()).compressed_len,
        c_tau=estimate(c, encode_tau(tau).data).compressed_len,
        c_edgeset_given_x=estimate_conditional_stream(c, edges, lambda: [x.data]),
        c_graph_edgeset=estimate_stream(c, EdgeSetStringEncoder(graph_mag).chunks()).compressed_len,
    )
    if row.n_vertices != 2**row.ones or row.n_possible_edges != row.n_vertices * (row.n_vertices - 1) // 2:
        raise ExperimentError(f"row arithmetic broken for p = {row.p}: {row}")
    return row


def measure_lemma_row(mag: SimpleMag, w: str, compressor: str) -> LemmaRow:
    c = get_compressor(compressor)
    x = encode_characteristic(mag)

    def edges() -> Iterator[bytes]:
        return EdgeSetStringEncoder(mag).chunks()

    return LemmaRow(
        p=mag.tau.order,
        ones=w.count("1"),
        n_possible_edges=mag.tau.num_possible_edges,
        c_x=estimate(c, x.data).compressed_len,
        c_edgeset=estimate_stream(c, edges()).compressed_len,
        c_tau=estimate(c, encode_tau(mag.tau).data).compressed_len,
        c_edgeset_given_x=estimate_conditional_stream(c, edges, lambda: [x.data]),
        c_x_given_edgeset=estimate_conditional_stream(c, lambda: [x.data], edges),
    )


def _build(kind: Kind, seed: int, p: int, cfg: ExperimentConfig) -> Tuple[SimpleMag, ClassicalGraph, str]:
    if kind == "control-uniform":
        return build_uniform(p, topology=cfg.topology, density=cfg.density, seed=seed)
    return build_worst_case(seed, p, topology=cfg.topology, density=cfg.density)


def _measure_p(kind: Kind, seed: int, p: int, cfg: ExperimentConfig) -> DistortionRow | LemmaRow:
    mag, graph, w = _build(kind, seed, p, cfg)
    if kind == "lemma":
        row: DistortionRow | LemmaRow = measure_lemma_row(mag, w, cfg.compressor)
    else:
        row = measure_row(mag, graph, w, cfg.compressor)
    LOGGER.info("%s p=%d ones=%d |E_c|=%d measured with %s", kind, p, row.ones, row.n_possible_edges, cfg.compressor)
    return row


def _choose_seed(kind: Kind, cfg: ExperimentConfig) -> SeedChoice:
    if kind == "control-uniform":
        ones = tuple(cfg.p_values)
        return SeedChoice(cfg.seed, cfg.seed, 0, ones)
    return select_seed(cfg.seed, cfg.p_values, max_ones=cfg.max_ones, require_growth=cfg.require_growth)


def _check_caps(kind: Kind, seed: int, cfg: ExperimentConfig) -> None:
    for p in cfg.p_values:
        w = "1" * p if kind == "control-uniform" else w_bits(seed, p)
        tau_from_bitstring(w)


def _finish(
    kind: Kind,
    cfg: ExperimentConfig,
    choice: SeedChoice,
    rows: List,
    error: Optional[BaseException] = None,
) -> DistortionReport:
    distortion_rows = [r for r in rows if isinstance(r, DistortionRow)]
    lemma_rows = [r for r in rows if isinstance(r, LemmaRow)]
    trend = summarize(distortion_rows) if distortion_rows and error is None else None
    report = make_report(
        kind,
        cfg,
        effective_seed=choice.effective_seed,
        rows=distortion_rows,
        lemma_rows=lemma_rows,
        trend=trend,
        error=error,
    )
    if cfg.out_dir:
        emit_all(report, Path(cfg.out_dir), stem=kind.replace("-", "_"))
    return report


def run_experiment(kind: Kind, cfg: ExperimentConfig) -> DistortionReport:
    """Measure every p of *cfg* serially (or in a pool when ``cfg.workers > 1``).

    When *cfg* names an output directory the reports are written there; if
    seed selection, a size cap or a row fails, the rows measured so far are
    flushed with ``status = "failed"`` before the error propagates.
    """

    if cfg.workers > 1:
        return asyncio.run(run_sweep_async(cfg, kind=kind))

    choice = SeedChoice(cfg.seed, cfg.seed, 0, ())
    rows: List = []
    p: Optional[int] = None
    try:
        choice = _choose_seed(kind, cfg)
        _check_caps(kind, choice.effective_seed, cfg)
        for p in cfg.p_values:
            rows.append(_measure_p(kind, choice.effective_seed, p, cfg))
    except Exception as exc:
        if p is None:
            LOGGER.error("%s failed before the first row: %s", kind, exc)
        else:
            LOGGER.error("%s failed at p=%d: %s", kind, p, exc)
        _finish(kind, cfg, choice, rows, exc)
        raise
    return _finish(kind, cfg, choice, rows)


async def run_sweep_async(
    cfg: ExperimentConfig,
    *,
    kind: Kind = "sweep",
    executor: Optional[Executor] = None,
) -> DistortionReport:
    """Measure rows concurrently; the report is identical to the serial run."""

    choice = SeedChoice(cfg.seed, cfg.seed, 0, ())
    try:
        choice = _choose_seed(kind, cfg)
        _check_caps(kind, choice.effective_seed, cfg)
    except Exception as exc:
        LOGGER.error("%s failed before the first row: %s", kind, exc)
        _finish(kind, cfg, choice, [], exc)
        raise

    loop = asyncio.get_running_loop()
    own_pool = executor is None and cfg.workers > 1
    pool = ProcessPoolExecutor(max_workers=cfg.workers) if own_pool else executor
    try:
        tasks = [
            loop.run_in_executor(pool, partial(_measure_p, kind, choice.effective_seed, p, cfg))
            for p in cfg.p_values
        ]
        results = await asyncio.gather(*tasks, return_exceptions=True)
    finally:
        if own_pool and pool is not None:
            pool.shutdown()

    rows: List = []
    for result in results:
        if isinstance(result, BaseException):
            _finish(kind, cfg, choice, rows, result)
            raise result
        rows.append(result)
    return _finish(kind, cfg, choice, rows)


def run_distortion_sweep(cfg: ExperimentConfig) -> List[DistortionRow]:
    return run_experiment("sweep", cfg).rows


def run_uniform_control(cfg: ExperimentConfig) -> List[DistortionRow]:
    return run_experiment("control-uniform", cfg).rows


def run_lemma_check(cfg: ExperimentConfig) -> List[LemmaRow]:
    return run_experiment("lemma", cfg).lemma_rows
