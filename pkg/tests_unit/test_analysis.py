import math

import pytest

from magcodec.experiments.analysis import (
    conditional_ratios,
    distortion_series,
    gap_series,
    log_fit,
    rank_correlation,
    ratios_near,
    slope,
    strictly_increasing,
    summarize,
    within_log_bound,
)
from magcodec.schemas import DistortionRow


def _row(p, ones, c_x, c_edgeset, c_tau, c_cond, c_graph):
    n = 2**ones
    return DistortionRow(
        p=p,
        ones=ones,
        n_vertices=n,
        n_possible_edges=n * (n - 1) // 2,
        c_x=c_x,
        c_edgeset=c_edgeset,
        c_tau=c_tau,
        c_edgeset_given_x=c_cond,
        c_graph_edgeset=c_graph,
    )


ROWS = [
    _row(8, 3, 40, 300, 24, 50, 200),
    _row(12, 5, 56, 2000, 32, 60, 1500),
    _row(16, 7, 80, 9000, 40, 90, 7000),
    _row(20, 9, 96, 40000, 48, 110, 30000),
]


def test_series():
    assert distortion_series(ROWS) == [100, 500, 2000, 10000]
    assert gap_series(ROWS) == [260, 1944, 8920, 39904]
    assert conditional_ratios(ROWS)[0] == pytest.approx(50 / 24)


def test_monotonicity():
    assert strictly_increasing([1, 2, 5])
    assert not strictly_increasing([1, 2, 2])
    assert strictly_increasing([7])


def test_rank_correlation_and_slope():
    assert rank_correlation([1, 2, 3, 4], [10, 20, 15, 40]) == pytest.approx(0.8)
    assert rank_correlation([1], [1]) is None
    assert rank_correlation([1, 2, 3], [5, 5, 5]) is None
    assert slope([0, 1, 2], [1, 3, 5]) == pytest.approx(2.0)
    assert slope([3, 3], [1, 2]) is None


def test_log_bound_and_ratio_band():
    a, b = log_fit(ROWS)
    assert a > 0
    assert within_log_bound(ROWS, 4.0, 64.0)
    assert not within_log_bound(ROWS, 1.0, 0.0)
    assert ratios_near(ROWS, [2.0, 2.0, 2.0, 2.0], 1.2)
    assert not ratios_near(ROWS, [1.0, 1.0, 1.0, 1.0], 2.0)
    assert not ratios_near(ROWS, [2.0, 2.0], 1.2)


def test_summarize():
    trend = summarize(ROWS)
    assert trend.distortion_strictly_increasing
    assert trend.gap_strictly_increasing
    assert trend.distortion_spearman == pytest.approx(1.0)
    assert trend.distortion_slope > 0
    assert len(trend.c_x_log_fit) == 2
    assert all(not math.isnan(r) for r in trend.conditional_ratio)


def test_summarize_single_row():
    trend = summarize(ROWS[:1])
    assert trend.distortion_spearman is None
    assert trend.distortion_slope is None
    assert trend.c_x_log_fit is None
