from .families import build_uniform, build_worst_case, select_seed, w_bits
from .report import emit_report, load_report
from .sweep import (
    run_distortion_sweep,
    run_experiment,
    run_lemma_check,
    run_sweep_async,
    run_uniform_control,
)

__all__ = [
    "build_uniform",
    "build_worst_case",
    "emit_report",
    "load_report",
    "run_distortion_sweep",
    "run_experiment",
    "run_lemma_check",
    "run_sweep_async",
    "run_uniform_control",
    "select_seed",
    "w_bits",
]
