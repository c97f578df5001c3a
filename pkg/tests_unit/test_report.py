import re

import pytest

from magcodec.core.errors import MagValidationError, ReportIOError
from magcodec.experiments.analysis import summarize
from magcodec.experiments.report import emit_all, emit_report, load_report, make_report, render_csv, render_svg
from magcodec.schemas import DistortionReport, DistortionRow, ExperimentConfig


def _rows():
    rows = []
    for p, ones in ((4, 2), (6, 3), (8, 4)):
        n = 2**ones
        rows.append(
            DistortionRow(
                p=p,
                ones=ones,
                n_vertices=n,
                n_possible_edges=n * (n - 1) // 2,
                c_x=16 + 8 * ones,
                c_edgeset=64 * ones,
                c_tau=24 + 4 * p,
                c_edgeset_given_x=40 + ones,
                c_graph_edgeset=48 * ones,
            )
        )
    return rows


def _report(rows, **overrides):
    cfg = ExperimentConfig(seed=7, p_values=[4, 6, 8], compressor="lz", **overrides)
    return make_report("sweep", cfg, effective_seed=9, rows=rows, trend=summarize(rows))


def test_csv_header_and_rows():
    text = render_csv(_rows())
    lines = text.splitlines()
    assert lines[0] == "p,ones,n_vertices,n_possible_edges,c_x,c_edgeset,c_tau,c_edgeset_given_x,c_graph_edgeset"
    assert lines[1] == "4,2,4,6,32,128,40,42,96"
    assert len(lines) == 4
    assert text.endswith("\n")


def test_report_echoes_config():
    report = _report(_rows())
    assert report.status == "ok"
    assert report.seed == 7
    assert report.effective_seed == 9
    assert report.density is None
    assert report.versions.magcodec
    dense = _report(_rows(), topology="random_density", density=0.25)
    assert dense.density == 0.25


def test_failed_report_carries_the_error():
    cfg = ExperimentConfig(seed=1, p_values=[4])
    report = make_report("lemma", cfg, effective_seed=1, error=ValueError("boom"))
    assert report.status == "failed"
    assert report.error == "ValueError: boom"


def test_emit_all_writes_json_csv_and_svg(tmp_path):
    report = _report(_rows())
    paths = emit_all(report, tmp_path / "out", stem="sweep")
    assert sorted(p.name for p in paths) == ["sweep.csv", "sweep.json", "sweep.svg"]
    loaded = load_report(tmp_path / "out" / "sweep.json")
    assert loaded == report
    assert DistortionReport.model_validate_json((tmp_path / "out" / "sweep.json").read_text()) == report


def test_emit_all_without_rows_writes_only_json(tmp_path):
    cfg = ExperimentConfig(seed=1, p_values=[4])
    report = make_report("lemma", cfg, effective_seed=1)
    paths = emit_all(report, tmp_path, stem="lemma")
    assert [p.name for p in paths] == ["lemma.json"]


def test_svg_has_one_polyline_per_series():
    svg = render_svg(_rows(), title="sweep")
    assert svg.startswith("<svg")
    series = re.findall(r'<polyline data-series="([a-z_]+)"', svg)
    assert series == ["c_x", "c_edgeset", "c_tau", "c_graph_edgeset"]
    assert "<title>sweep</title>" in svg


def test_svg_single_row_is_still_drawable():
    svg = render_svg(_rows()[:1])
    assert svg.count("<polyline") == 4


def test_emit_report_rejects_bad_requests(tmp_path):
    with pytest.raises(MagValidationError):
        emit_report([], "csv", tmp_path)
    with pytest.raises(MagValidationError):
        emit_report(_rows(), "json", tmp_path)
    with pytest.raises(MagValidationError):
        emit_report(_rows(), "pdf", tmp_path)


def test_unwritable_directory_raises_report_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ReportIOError):
        emit_report(_rows(), "csv", blocker / "sub")
    with pytest.raises(ReportIOError):
        load_report(tmp_path / "missing.json")
