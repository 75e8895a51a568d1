from typing import Annotated

import typer

from conservnet import storage
from conservnet.cli.deps import (
    ConfigOpt,
    DataPathOpt,
    EpochsOpt,
    HiddenLayersOpt,
    LossOpt,
    LrOpt,
    NGroupsOpt,
    NuisanceOpt,
    OutOpt,
    PointsOpt,
    SeedOpt,
    SystemOpt,
    build_config,
)
from conservnet.models import SweepAxis
from conservnet.services.sweep import sweep, sweep_dir


def sweep_command(
    axis: Annotated[SweepAxis, typer.Option("--axis", help="Parameter to vary.")],
    value: Annotated[
        list[str] | None,
        typer.Option("--value", help="Axis value, repeatable; defaults per axis."),
    ] = None,
    repeats: Annotated[int, typer.Option("--repeats", min=1)] = 1,
    workers: Annotated[int | None, typer.Option("--workers", min=1)] = None,
    config: ConfigOpt = None,
    system: SystemOpt = None,
    n: NGroupsOpt = None,
    m: PointsOpt = None,
    seed: SeedOpt = None,
    nuisance: NuisanceOpt = None,
    data_path: DataPathOpt = None,
    hidden_layers: HiddenLayersOpt = None,
    epochs: EpochsOpt = None,
    lr: LrOpt = None,
    loss: LossOpt = None,
    out: OutOpt = None,
) -> None:
    """
    Run one experiment per axis value and write the results table as sweep.csv.
    """
    base = build_config(
        config,
        system=system,
        n_groups=n,
        points_per_group=m,
        seed=seed,
        nuisance=nuisance,
        data_path=data_path,
        hidden_layers=hidden_layers,
        epochs=epochs,
        lr=lr,
        loss_variant=loss,
        output_dir=out,
    )
    rows = sweep(axis, value, base, repeats=repeats, workers=workers)
    path = storage.write_sweep_table(
        rows=rows, axis=axis.value, path=sweep_dir(axis, base) / "sweep.csv"
    )
    failed = sum(row.error is not None for row in rows)
    typer.echo(path)
    if failed:
        typer.echo(f"{failed} of {len(rows)} cells failed", err=True)
