__all__ = [
    # Dataset models
    "DatasetMeta",
    "FloatArray",
    "Group",
    "GroupedDataset",
    "Invariant",
    "PRIMARY_INVARIANT",
    "SystemName",
    # Experiment models
    "ExperimentConfig",
    "KeplerTarget",
    # Loss models
    "DeviationMeasure",
    "LossConfig",
    "LossVariant",
    "NoiseMode",
    "SpreaderNorm",
    # Report models
    "EvalReport",
    "GroupStat",
    "Heatmap",
    "HeatmapAxis",
    "RunSummary",
    "SweepAxis",
    "SweepRow",
    "SymbolicReport",
    "TrajectoryResponse",
    # Training models
    "EarlyStopConfig",
    "Monitored",
    "Snapshot",
    "StopReason",
    "TrainConfig",
    "TrainReport",
]

# Dataset models
from .datasets import (
    PRIMARY_INVARIANT,
    DatasetMeta,
    FloatArray,
    Group,
    GroupedDataset,
    Invariant,
    SystemName,
)

# Experiment models
from .experiment import ExperimentConfig, KeplerTarget

# Loss models
from .loss import DeviationMeasure, LossConfig, LossVariant, NoiseMode, SpreaderNorm

# Report models
from .reports import (
    EvalReport,
    GroupStat,
    Heatmap,
    HeatmapAxis,
    RunSummary,
    SweepAxis,
    SweepRow,
    SymbolicReport,
    TrajectoryResponse,
)

# Training models
from .training import (
    EarlyStopConfig,
    Monitored,
    Snapshot,
    StopReason,
    TrainConfig,
    TrainReport,
)
