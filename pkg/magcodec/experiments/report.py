"""Report emission: CSV rows, JSON report with config echo, SVG chart."""
from __future__ import annotations

import csv
import io
import logging
import math
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from ..core.errors import MagValidationError, ReportIOError
from ..schemas import CSV_COLUMNS, DistortionReport, DistortionRow, ExperimentConfig, LemmaRow, TrendSummary, Versions

LOGGER = logging.getLogger("magcodec.report")

ReportFormat = Literal["csv", "json", "svg"]

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"

SERIES = (
    ("c_x", "C(x)", "#1f77b4"),
    ("c_edgeset", "C(<E>)", "#d62728"),
    ("c_tau", "C(<tau>)", "#2ca02c"),
    ("c_graph_edgeset", "C(<E(G)>)", "#9467bd"),
)

_WIDTH, _HEIGHT, _MARGIN = 720, 440, 60

_environment = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    autoescape=True,
    undefined=StrictUndefined,
    keep_trailing_newline=True,
)


def versions() -> Versions:
    from .. import __version__

    return Versions(magcodec=__version__, numpy=np.__version__)


def make_report(
    kind: str,
    cfg: ExperimentConfig,
    *,
    effective_seed: int,
    rows: Sequence[DistortionRow] = (),
    lemma_rows: Sequence[LemmaRow] = (),
    trend: Optional[TrendSummary] = None,
    error: Optional[BaseException] = None,
) -> DistortionReport:
    return DistortionReport(
        kind=kind,
        status="failed" if error is not None else "ok",
        error=f"{type(error).__name__}: {error}" if error is not None else None,
        seed=cfg.seed,
        effective_seed=effective_seed,
        compressor=cfg.compressor,
        topology=cfg.topology,
        density=cfg.density if cfg.topology == "random_density" else None,
        p_values=list(cfg.p_values),
        versions=versions(),
        rows=list(rows),
        lemma_rows=list(lemma_rows),
        trend=trend,
    )


def render_csv(rows: Sequence[DistortionRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv_row())
    return buffer.getvalue()


def render_json(report: DistortionReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def _scale(values: Sequence[float], low: float, high: float, out_low: float, out_high: float) -> List[float]:
    if high == low:
        return [(out_low + out_high) / 2 for _ in values]
    return [out_low + (v - low) * (out_high - out_low) / (high - low) for v in values]


def render_svg(rows: Sequence[DistortionRow], *, title: str = "compressed size vs p") -> str:
    """Line chart of the four measured series against p, log2 scaled."""

    ps = [row.p for row in rows]
    logs: Dict[str, List[float]] = {
        key: [math.log2(getattr(row, key) + 1) for row in rows] for key, _, _ in SERIES
    }
    all_logs = [v for series in logs.values() for v in series]
    y_low, y_high = min(all_logs), max(all_logs)
    xs = _scale(ps, min(ps), max(ps), _MARGIN, _WIDTH - _MARGIN)
    series = []
    for key, label, colour in SERIES:
        ys = _scale(logs[key], y_low, y_high, _HEIGHT - _MARGIN, _MARGIN)
        points = " ".join(f"{x:.1f},{y:.1f}" for x, y in zip(xs, ys))
        series.append({"key": key, "label": label, "colour": colour, "points": points})
    ticks = [{"x": f"{x:.1f}", "label": p} for x, p in zip(xs, ps)]
    return _environment.get_template("chart.svg.j2").render(
        title=title,
        width=_WIDTH,
        height=_HEIGHT,
        margin=_MARGIN,
        series=series,
        ticks=ticks,
        y_low=f"{y_low:.1f}",
        y_high=f"{y_high:.1f}",
    )


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc}") from exc
    LOGGER.info("wrote %s", path)
    return path


def emit_report(
    rows: Sequence[DistortionRow],
    fmt: ReportFormat,
    out_dir: Path,
    *,
    report: Optional[DistortionReport] = None,
    stem: str = "distortion",
) -> Path:
    """Write *rows* as ``<stem>.<fmt>`` under *out_dir*."""

    if not rows:
        raise MagValidationError("cannot emit a report without rows")
    out_dir = Path(out_dir)
    if fmt == "csv":
        return _write(out_dir / f"{stem}.csv", render_csv(rows))
    if fmt == "svg":
        return _write(out_dir / f"{stem}.svg", render_svg(rows, title=stem.replace("_", " ")))
    if fmt == "json":
        if report is None:
            raise MagValidationError("JSON reports need the full DistortionReport")
        return _write(out_dir / f"{stem}.json", render_json(report))
    raise MagValidationError(f"unknown report format {fmt!r}")


def emit_all(report: DistortionReport, out_dir: Path, *, stem: str) -> List[Path]:
    """JSON always; CSV and SVG whenever the report has distortion rows."""

    written = [_write(Path(out_dir) / f"{stem}.json", render_json(report))]
    if report.rows:
        written.append(emit_report(report.rows, "csv", out_dir, stem=stem))
        written.append(emit_report(report.rows, "svg", out_dir, stem=stem))
    return written


def load_report(path: Path) -> DistortionReport:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc
    return DistortionReport.model_validate_json(text)
