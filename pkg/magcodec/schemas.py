from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .core.config import get_settings

DEFAULT_SWEEP_P = [8, 12, 16, 20, 24]
DEFAULT_UNIFORM_P = [4, 6, 8, 10, 12]

CSV_COLUMNS = (
    "p",
    "ones",
    "n_vertices",
    "n_possible_edges",
    "c_x",
    "c_edgeset",
    "c_tau",
    "c_edgeset_given_x",
    "c_graph_edgeset",
)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default_factory=lambda: get_settings().default_seed, ge=0, lt=2**64)
    p_values: List[int] = Field(default_factory=lambda: list(DEFAULT_SWEEP_P))
    topology: Literal["trivial", "random_density"] = "trivial"
    density: float = Field(default=0.5, ge=0.0, le=1.0)
    compressor: str = Field(default_factory=lambda: get_settings().default_compressor)
    out_dir: Optional[str] = None
    max_ones: int = Field(default_factory=lambda: get_settings().max_ones, ge=1)
    workers: int = Field(default_factory=lambda: get_settings().workers, ge=1)
    require_growth: bool = True

    @field_validator("p_values")
    @classmethod
    def _positive_orders(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one p value is required")
        if any(p < 1 for p in value):
            raise ValueError("every p must be >= 1")
        return sorted(set(value))


class DistortionRow(BaseModel):
    p: int
    ones: int
    n_vertices: int
    n_possible_edges: int
    c_x: int
    c_edgeset: int
    c_tau: int
    c_edgeset_given_x: int
    c_graph_edgeset: int

    def as_csv_row(self) -> List[int]:
        return [getattr(self, column) for column in CSV_COLUMNS]


class LemmaRow(BaseModel):
    p: int
    ones: int
    n_possible_edges: int
    c_x: int
    c_edgeset: int
    c_tau: int
    c_edgeset_given_x: int
    c_x_given_edgeset: int


class TrendSummary(BaseModel):
    distortion: List[int]
    gap: List[int]
    conditional_ratio: List[float]
    distortion_spearman: Optional[float] = None
    distortion_slope: Optional[float] = None
    distortion_strictly_increasing: bool
    gap_strictly_increasing: bool
    c_x_log_fit: Optional[List[float]] = None


class Versions(BaseModel):
    magcodec: str
    numpy: str


class DistortionReport(BaseModel):
    kind: Literal["sweep", "control-uniform", "lemma"]
    status: Literal["ok", "failed"] = "ok"
    error: Optional[str] = None
    seed: int
    effective_seed: int
    compressor: str
    topology: str
    density: Optional[float] = None
    p_values: List[int]
    versions: Versions
    rows: List[DistortionRow] = Field(default_factory=list)
    lemma_rows: List[LemmaRow] = Field(default_factory=list)
    trend: Optional[TrendSummary] = None
