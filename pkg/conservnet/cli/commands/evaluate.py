from typing import Annotated

import logfire
import typer

from conservnet import storage
from conservnet.cli.deps import (
    CheckpointArg,
    DatasetArg,
    NormOpt,
    OutOpt,
    load_dataset,
    load_model,
)
from conservnet.models import NoiseMode, SpreaderNorm
from conservnet.services.evaluation import evaluate, trajectory_response


def evaluate_command(
    checkpoint: CheckpointArg,
    dataset: DatasetArg,
    out: OutOpt = None,
    perturb_radius: Annotated[
        float | None,
        typer.Option(
            "--perturb-radius",
            min=0.0,
            help="Also record outputs along a spreading-noise perturbed copy.",
        ),
    ] = None,
    norm: NormOpt = None,
    noise_mode: Annotated[NoiseMode, typer.Option("--noise-mode")] = NoiseMode.BATCH_MAX,
    seed: Annotated[int, typer.Option("--seed", min=0)] = 0,
) -> None:
    """
    Score a checkpoint on a dataset: rho, sigma bar, calibration and per-group stats.
    """
    params = load_model(checkpoint)
    data = load_dataset(dataset)
    directory = out if out is not None else checkpoint.parent

    report = evaluate(params, data)
    path = storage.write_report(
        report=report, path=directory / f"eval-{dataset.stem}.json"
    )
    typer.echo(path)
    typer.echo(
        f"rho={report.rho} sigma_bar={report.sigma_bar} degenerate={report.degenerate}"
    )

    if perturb_radius is not None:
        response = trajectory_response(
            params, data, perturb_radius, norm or SpreaderNorm.L2, seed, noise_mode
        )
        trajectory = storage.write_trajectory_response(
            response=response, path=directory / f"trajectory-{dataset.stem}.csv"
        )
        logfire.info(
            "Trajectory response",
            clean_std=response.clean_std,
            noised_std=response.noised_std,
        )
        typer.echo(trajectory)
        typer.echo(f"clean_std={response.clean_std} noised_std={response.noised_std}")
