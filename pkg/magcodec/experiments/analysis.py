"""Trend statistics over measured rows: rank correlation, slopes and bounds."""
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from ..schemas import DistortionRow, TrendSummary


def distortion_series(rows: Sequence[DistortionRow]) -> List[int]:
    """``C(<E>) - C(<E(G)>)`` per row."""

    return [row.c_edgeset - row.c_graph_edgeset for row in rows]


def gap_series(rows: Sequence[DistortionRow]) -> List[int]:
    """``C(<E>) - C(x)`` per row."""

    return [row.c_edgeset - row.c_x for row in rows]


def conditional_ratios(rows: Sequence[DistortionRow]) -> List[float]:
    return [row.c_edgeset_given_x / row.c_tau if row.c_tau else 0.0 for row in rows]


def strictly_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Spearman's rho, or ``None`` when it is undefined (fewer than two points or a constant series)."""

    if len(xs) < 2 or len(set(xs)) < 2 or len(set(ys)) < 2:
        return None
    rho, _ = spearmanr(xs, ys)
    return None if math.isnan(rho) else float(rho)


def slope(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Least-squares slope of ys on xs."""

    if len(xs) < 2 or len(set(xs)) < 2:
        return None
    return float(np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)[0])


def log_fit(rows: Sequence[DistortionRow]) -> Optional[Tuple[float, float]]:
    """Fit ``C(x) ~ a * log2|E_c| + b``."""

    logs = [math.log2(row.n_possible_edges) for row in rows]
    if len(set(logs)) < 2:
        return None
    a, b = np.polyfit(logs, [row.c_x for row in rows], 1)
    return float(a), float(b)


def within_log_bound(rows: Sequence[DistortionRow], a: float, b: float) -> bool:
    """True iff ``C(x) <= a * log2|E_c| + b`` on every row."""

    return all(row.c_x <= a * math.log2(max(row.n_possible_edges, 1)) + b for row in rows)


def ratios_near(rows: Sequence[DistortionRow], reference: Sequence[float], factor: float) -> bool:
    """True iff each row's conditional ratio is within *factor* of its reference value."""

    ratios = conditional_ratios(rows)
    if len(ratios) != len(reference):
        return False
    return all(ref / factor <= ratio <= ref * factor for ratio, ref in zip(ratios, reference))


def summarize(rows: Sequence[DistortionRow]) -> TrendSummary:
    ps = [row.p for row in rows]
    distortion = distortion_series(rows)
    gap = gap_series(rows)
    fit = log_fit(rows)
    return TrendSummary(
        distortion=distortion,
        gap=gap,
        conditional_ratio=[round(r, 6) for r in conditional_ratios(rows)],
        distortion_spearman=rank_correlation(ps, distortion),
        distortion_slope=slope(ps, distortion),
        distortion_strictly_increasing=strictly_increasing(distortion),
        gap_strictly_increasing=strictly_increasing(gap),
        c_x_log_fit=list(fit) if fit else None,
    )
