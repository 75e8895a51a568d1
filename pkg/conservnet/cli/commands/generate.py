from typing import Annotated

import logfire
import typer

from conservnet import storage
from conservnet.cli.deps import (
    FixedLOpt,
    NoiseOpt,
    NuisanceOpt,
    OutOpt,
    PolarOpt,
    S1FormOpt,
    TargetOpt,
    build_config,
    output_dir,
)
from conservnet.core.exceptions import UsageError
from conservnet.models import SystemName
from conservnet.services.experiment import TEST_FILE, TRAIN_FILE, build_datasets


def generate(
    system: Annotated[SystemName, typer.Argument(help="System to generate.")],
    n: Annotated[int, typer.Option("--n", min=1, help="Groups N.")] = 20,
    m: Annotated[int, typer.Option("--m", min=1, help="Points per group M.")] = 100,
    seed: Annotated[int, typer.Option("--seed", min=0)] = 0,
    out: OutOpt = None,
    s1_form: S1FormOpt = None,
    nuisance: NuisanceOpt = None,
    polar: PolarOpt = None,
    noise: NoiseOpt = None,
    fixed_l: FixedLOpt = None,
    target: TargetOpt = None,
) -> None:
    """
    Write a train dataset and an equally sized test dataset.
    """
    if system is SystemName.DOUBLE_PENDULUM:
        raise UsageError("Use `ingest-dp` for the double pendulum recording")

    cfg = build_config(
        None,
        system=system,
        n_groups=n,
        points_per_group=m,
        seed=seed,
        s1_form=s1_form,
        nuisance=nuisance,
        polar=polar,
        noise_strength=noise,
        fixed_l=fixed_l,
        kepler_target=target,
    )
    directory = output_dir(out, f"data/{system.value}-{cfg.config_hash}")
    train_data, test_data = build_datasets(cfg)
    train_path = storage.write_dataset(dataset=train_data, path=directory / TRAIN_FILE)
    test_path = storage.write_dataset(dataset=test_data, path=directory / TEST_FILE)

    logfire.info(
        "Datasets written",
        system=system.value,
        train=str(train_path),
        test=str(test_path),
        points=train_data.n_points,
    )
    typer.echo(train_path)
    typer.echo(test_path)
