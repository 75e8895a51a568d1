from pathlib import Path
from typing import Annotated, Any

import typer

from conservnet import storage
from conservnet.core.config import settings
from conservnet.models import (
    DeviationMeasure,
    ExperimentConfig,
    GroupedDataset,
    LossVariant,
    Monitored,
    NoiseMode,
    SpreaderNorm,
    SystemName,
)
from conservnet.services.network import MlpParams

# Artifacts
CheckpointArg = Annotated[
    Path, typer.Argument(help="Checkpoint written by `train` (checkpoint.npz).")
]
DatasetArg = Annotated[Path, typer.Argument(help="Dataset CSV with its JSON sidecar.")]
OutOpt = Annotated[
    Path | None,
    typer.Option("--out", help="Output directory (default under CONSERVNET_OUTPUT_ROOT)."),
]
ConfigOpt = Annotated[
    Path | None,
    typer.Option("--config", help="Flat key=value experiment file; flags win."),
]

# Data
SystemOpt = Annotated[SystemName | None, typer.Option("--system", help="Data source.")]
NGroupsOpt = Annotated[int | None, typer.Option("--n", min=1, help="Groups N.")]
PointsOpt = Annotated[int | None, typer.Option("--m", min=1, help="Points per group M.")]
SeedOpt = Annotated[int | None, typer.Option("--seed", min=0, help="Run seed.")]
S1FormOpt = Annotated[
    str | None, typer.Option("--s1-form", help="standard or alternate S1 invariant.")
]
NuisanceOpt = Annotated[
    bool | None,
    typer.Option("--nuisance/--no-nuisance", help="Append a N(0,1) column."),
]
PolarOpt = Annotated[
    bool | None, typer.Option("--polar/--cartesian", help="Kepler in polar coordinates.")
]
NoiseOpt = Annotated[
    float | None, typer.Option("--noise", min=0.0, help="Observation noise std s.")
]
FixedLOpt = Annotated[
    float | None, typer.Option("--fixed-l", help="Pin Kepler angular momentum.")
]
TargetOpt = Annotated[
    str | None,
    typer.Option("--target", help="Kepler primary invariant: angular_momentum or energy."),
]
DataPathOpt = Annotated[
    Path | None, typer.Option("--data-path", help="Double pendulum trajectory CSV.")
]

# Network and optimisation
HiddenWidthOpt = Annotated[int | None, typer.Option("--hidden-width", min=1)]
HiddenLayersOpt = Annotated[int | None, typer.Option("--hidden-layers", min=1)]
EpochsOpt = Annotated[int | None, typer.Option("--epochs", min=1)]
LrOpt = Annotated[float | None, typer.Option("--lr", min=0.0)]
EvalEveryOpt = Annotated[int | None, typer.Option("--eval-every", min=1)]
PatienceOpt = Annotated[int | None, typer.Option("--patience", min=1)]
MinDeltaOpt = Annotated[float | None, typer.Option("--min-delta", min=0.0)]
MonitoredOpt = Annotated[Monitored | None, typer.Option("--monitor")]
EarlyStopOpt = Annotated[
    bool | None, typer.Option("--early-stop/--no-early-stop", help="Patience-based stop.")
]

# Loss
LossOpt = Annotated[LossVariant | None, typer.Option("--loss", help="Loss variant.")]
DeviationOpt = Annotated[DeviationMeasure | None, typer.Option("--deviation")]
QOpt = Annotated[float | None, typer.Option("--q", help="Spreading constant Q.")]
ROpt = Annotated[float | None, typer.Option("--r", help="Noise radius R.")]
NormOpt = Annotated[SpreaderNorm | None, typer.Option("--norm", help="Spreader norm.")]
NoiseModeOpt = Annotated[NoiseMode | None, typer.Option("--noise-mode")]


def build_config(config: Path | None, **flags: Any) -> ExperimentConfig:
    """File values first, then every flag that was actually given."""
    return ExperimentConfig.load(config, **flags)


def output_dir(out: Path | None, default: str) -> Path:
    return out if out is not None else settings.OUTPUT_ROOT / default


def load_model(path: Path) -> MlpParams:
    return storage.load_checkpoint(path=path)


def load_dataset(path: Path) -> GroupedDataset:
    return storage.read_dataset(path=path)


def parse_assignments(text: str) -> dict[str, float]:
    """``"theta1=0,theta2=0"`` -> {"theta1": 0.0, "theta2": 0.0}."""
    values: dict[str, float] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError(item)
            values[name.strip()] = float(value)
        except ValueError as exc:
            raise typer.BadParameter(f"Expected name=value, got {item!r}") from exc
    return values


def parse_floats(text: str, count: int) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise typer.BadParameter(f"Expected {count} numbers, got {text!r}") from exc
    if len(values) != count:
        raise typer.BadParameter(f"Expected {count} numbers, got {text!r}")
    return values
