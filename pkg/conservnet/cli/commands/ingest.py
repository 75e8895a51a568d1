from pathlib import Path
from typing import Annotated

import typer

from conservnet import storage
from conservnet.cli.deps import OutOpt, output_dir
from conservnet.core.config import settings
from conservnet.core.exceptions import UsageError
from conservnet.services.experiment import TEST_FILE, TRAIN_FILE
from conservnet.services.ingest import load_double_pendulum


def ingest_dp(
    path: Annotated[
        Path | None,
        typer.Argument(help="Trajectory CSV (theta1, theta2, omega1, omega2)."),
    ] = None,
    out: OutOpt = None,
) -> None:
    """
    Split the double pendulum recording into single-group train and test datasets.
    """
    path = path or settings.DOUBLE_PENDULUM_PATH
    if path is None:
        raise UsageError("No trajectory given and CONSERVNET_DOUBLE_PENDULUM_PATH unset")

    train_data, test_data = load_double_pendulum(path)
    directory = output_dir(out, "data/double_pendulum")
    typer.echo(storage.write_dataset(dataset=train_data, path=directory / TRAIN_FILE))
    typer.echo(storage.write_dataset(dataset=test_data, path=directory / TEST_FILE))
