from typing import Annotated

import typer

from conservnet import storage
from conservnet.cli.deps import (
    CheckpointArg,
    DatasetArg,
    OutOpt,
    load_dataset,
    load_model,
)
from conservnet.services.symbolic import (
    DEFAULT_DEGREE,
    DEFAULT_RIDGE_LAMBDA,
    DEFAULT_THRESHOLD,
    extract,
)


def extract_command(
    checkpoint: CheckpointArg,
    dataset: DatasetArg,
    degree: Annotated[int, typer.Option("--degree", min=1)] = DEFAULT_DEGREE,
    lam: Annotated[
        float, typer.Option("--lambda", min=0.0, help="Ridge penalty.")
    ] = DEFAULT_RIDGE_LAMBDA,
    threshold: Annotated[
        float, typer.Option("--threshold", min=0.0, help="Relative cut-off.")
    ] = DEFAULT_THRESHOLD,
    out: OutOpt = None,
) -> None:
    """
    Fit the model output with polynomial features and print the sparse formula.
    """
    report = extract(load_model(checkpoint), load_dataset(dataset), degree, lam, threshold)
    directory = out if out is not None else checkpoint.parent
    storage.write_report(report=report, path=directory / "symbolic.json")
    storage.write_text(text=report.formula + "\n", path=directory / "formula.txt")
    typer.echo(report.formula)
