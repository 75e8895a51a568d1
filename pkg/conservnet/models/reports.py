from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from .training import TrainReport

FloatArray = NDArray[np.float64]


class GroupStat(BaseModel):
    group_id: int
    mean: float
    std: float = Field(ge=0)


class EvalReport(BaseModel):
    # None when the dataset has no ground truth or the output is constant
    rho: float | None = Field(default=None, ge=-1, le=1)
    degenerate: bool = False
    sigma_bar: float = Field(ge=0)
    a: float | None = None
    b: float | None = None
    r2: float | None = None
    groups: list[GroupStat] = Field(default_factory=list)


class SweepAxis(str, Enum):
    NOISE_STRENGTH = "noise_strength"
    DATA_CONDITION = "data_condition"
    Q = "Q"
    R = "R"
    SPREADER_NORM = "spreader_norm"
    LEARNING_RATE = "learning_rate"
    HIDDEN_WIDTH = "hidden_width"


class SweepRow(BaseModel):
    value: str
    repeat: int = 0
    seed: int
    rho: float | None = None
    sigma_bar: float | None = None
    runtime: float = 0.0
    error: str | None = None


class SymbolicReport(BaseModel):
    degree: int = Field(ge=1)
    ridge_lambda: float = Field(ge=0)
    threshold: float = Field(ge=0)
    feature_names: list[str]
    coefficients: list[float]
    intercept: float
    terms: dict[str, float] = Field(default_factory=dict)
    formula: str
    r2: float


class RunSummary(BaseModel):
    """Final summary written as summary.json for every run."""

    config: dict[str, Any]
    config_hash: str
    stop_reason: str
    stopped_epoch: int
    train: EvalReport
    test: EvalReport | None = None
    final_train_loss: float | None = None
    final_test_loss: float | None = None
    checkpoint_path: str
    runtime: float = 0.0
    report: TrainReport | None = Field(default=None, exclude=True)

    @property
    def rho(self) -> float | None:
        source = self.test if self.test is not None else self.train
        return source.rho


@dataclass(frozen=True, slots=True)
class HeatmapAxis:
    name: str
    values: FloatArray


@dataclass(frozen=True, slots=True)
class Heatmap:
    """values[i, j] is the output at (rows.values[i], cols.values[j])."""

    values: FloatArray
    rows: HeatmapAxis
    cols: HeatmapAxis
    fixed: dict[str, float]

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))


def _spread(values: FloatArray) -> float:
    return 0.0 if np.ptp(values) == 0.0 else float(np.std(values))


@dataclass(frozen=True, slots=True)
class TrajectoryResponse:
    clean: FloatArray
    noised: FloatArray

    @property
    def clean_std(self) -> float:
        return _spread(self.clean)

    @property
    def noised_std(self) -> float:
        return _spread(self.noised)
