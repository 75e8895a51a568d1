import math
from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from conservnet import storage
from conservnet.cli.deps import load_dataset, load_model, parse_assignments, parse_floats
from conservnet.core.config import settings
from conservnet.core.exceptions import UsageError
from conservnet.models import Heatmap, HeatmapAxis
from conservnet.services.evaluation import cross_section, grid_axis
from conservnet.services.ingest import CrossSectionKind, ideal_dp_crosssection

# default free-variable pairs for the ideal pendulum surfaces
IDEAL_AXES: dict[str, tuple[str, str, float]] = {
    "omega_plane": ("omega1", "omega2", 10.0),
    "theta_plane": ("theta1", "theta2", math.pi),
}


def _axis(name: str, bounds: str | None, fallback: tuple[float, float], n: int) -> HeatmapAxis:
    low, high = parse_floats(bounds, 2) if bounds else fallback
    return grid_axis(name, low, high, n)


def heatmap(
    checkpoint: Annotated[
        Path | None, typer.Argument(help="Checkpoint; omit with --ideal.")
    ] = None,
    dataset: Annotated[
        Path | None,
        typer.Option("--dataset", help="Dataset giving variable names, scales and ranges."),
    ] = None,
    fix: Annotated[
        str, typer.Option("--fix", help="Fixed slice, e.g. theta1=0,theta2=0.")
    ] = "",
    free: Annotated[
        str | None, typer.Option("--free", help="Two free variables, e.g. omega1,omega2.")
    ] = None,
    range1: Annotated[str | None, typer.Option("--range1", help="lo,hi of the rows.")] = None,
    range2: Annotated[str | None, typer.Option("--range2", help="lo,hi of the columns.")] = None,
    resolution: Annotated[str, typer.Option("--resolution", help="rows,cols.")] = "50,50",
    ideal: Annotated[
        str | None,
        typer.Option("--ideal", help="omega_plane or theta_plane ideal surface instead."),
    ] = None,
    constants: Annotated[
        str | None, typer.Option("--constants", help="c1,c2,c3,c4 for --ideal.")
    ] = None,
    out: Annotated[Path | None, typer.Option("--out", help="Heatmap CSV path.")] = None,
) -> None:
    """
    Export a 2-D cross-section of the model output (or an ideal surface) as CSV.
    """
    n_rows, n_cols = (int(v) for v in parse_floats(resolution, 2))

    if ideal is not None:
        if ideal not in IDEAL_AXES:
            raise UsageError(f"--ideal must be one of {sorted(IDEAL_AXES)}")
        kind: CrossSectionKind = "omega_plane" if ideal == "omega_plane" else "theta_plane"
        row_name, col_name, half = IDEAL_AXES[kind]
        rows = _axis(row_name, range1, (-half, half), n_rows)
        cols = _axis(col_name, range2, (-half, half), n_cols)
        values = ideal_dp_crosssection(
            kind,
            rows.values,
            cols.values,
            parse_floats(constants, 4) if constants else None,
        )
        result = Heatmap(values=values, rows=rows, cols=cols, fixed={})
        default_out = settings.OUTPUT_ROOT / f"heatmap-ideal-{kind}.csv"
    else:
        if checkpoint is None or dataset is None or free is None:
            raise UsageError("heatmap needs a checkpoint, --dataset and --free")
        names = [name.strip() for name in free.split(",")]
        if len(names) != 2:
            raise UsageError(f"--free needs two variables, got {free!r}")
        data = load_dataset(dataset)
        raw = data.unscaled_states()
        span = {
            name: (float(np.min(raw[:, i])), float(np.max(raw[:, i])))
            for i, name in enumerate(data.variables)
        }
        if any(name not in span for name in names):
            raise UsageError(f"--free variables must be among {list(data.variables)}")
        rows = _axis(names[0], range1, span[names[0]], n_rows)
        cols = _axis(names[1], range2, span[names[1]], n_cols)
        result = cross_section(
            load_model(checkpoint),
            data.variables,
            parse_assignments(fix),
            rows,
            cols,
            rescale=data.rescale_log,
        )
        default_out = checkpoint.parent / f"heatmap-{names[0]}-{names[1]}.csv"

    csv_path, axes_path = storage.write_heatmap(heatmap=result, path=out or default_out)
    typer.echo(csv_path)
    typer.echo(axes_path)
