from pathlib import Path
from typing import Annotated

import typer

from conservnet.cli.deps import (
    ConfigOpt,
    DataPathOpt,
    DeviationOpt,
    EarlyStopOpt,
    EpochsOpt,
    EvalEveryOpt,
    FixedLOpt,
    HiddenLayersOpt,
    HiddenWidthOpt,
    LossOpt,
    LrOpt,
    MinDeltaOpt,
    MonitoredOpt,
    NGroupsOpt,
    NoiseModeOpt,
    NoiseOpt,
    NormOpt,
    NuisanceOpt,
    OutOpt,
    PatienceOpt,
    PointsOpt,
    PolarOpt,
    QOpt,
    ROpt,
    S1FormOpt,
    SeedOpt,
    SystemOpt,
    TargetOpt,
    build_config,
    load_dataset,
)
from conservnet.services.experiment import SUMMARY_FILE, run_dir, run_experiment


def train(
    config: ConfigOpt = None,
    train_data: Annotated[
        Path | None,
        typer.Option("--train-data", help="Existing train dataset instead of generating."),
    ] = None,
    test_data: Annotated[
        Path | None, typer.Option("--test-data", help="Existing test dataset.")
    ] = None,
    system: SystemOpt = None,
    n: NGroupsOpt = None,
    m: PointsOpt = None,
    seed: SeedOpt = None,
    s1_form: S1FormOpt = None,
    nuisance: NuisanceOpt = None,
    polar: PolarOpt = None,
    noise: NoiseOpt = None,
    fixed_l: FixedLOpt = None,
    target: TargetOpt = None,
    data_path: DataPathOpt = None,
    hidden_width: HiddenWidthOpt = None,
    hidden_layers: HiddenLayersOpt = None,
    epochs: EpochsOpt = None,
    lr: LrOpt = None,
    eval_every: EvalEveryOpt = None,
    patience: PatienceOpt = None,
    min_delta: MinDeltaOpt = None,
    monitor: MonitoredOpt = None,
    early_stop: EarlyStopOpt = None,
    loss: LossOpt = None,
    deviation: DeviationOpt = None,
    q: QOpt = None,
    r: ROpt = None,
    norm: NormOpt = None,
    noise_mode: NoiseModeOpt = None,
    out: OutOpt = None,
) -> None:
    """
    Train a model and write config.env, metrics.csv, checkpoint.npz and summary.json.
    """
    cfg = build_config(
        config,
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
        data_path=data_path,
        hidden_width=hidden_width,
        hidden_layers=hidden_layers,
        epochs=epochs,
        lr=lr,
        eval_every=eval_every,
        patience=patience,
        min_delta=min_delta,
        monitored=monitor,
        early_stop=early_stop,
        loss_variant=loss,
        deviation=deviation,
        Q=q,
        R=r,
        spreader_norm=norm,
        noise_mode=noise_mode,
        output_dir=out,
    )
    train_set = None if train_data is None else load_dataset(train_data)
    test_set = None if test_data is None else load_dataset(test_data)
    if train_set is None and test_set is not None:
        typer.echo("--test-data is ignored without --train-data", err=True)
        test_set = None

    summary = run_experiment(cfg, train_set, test_set)
    typer.echo(run_dir(cfg) / SUMMARY_FILE)
    typer.echo(f"stop_reason={summary.stop_reason} rho={summary.rho}")
    if summary.train.degenerate:
        typer.echo("degenerate calibration: model output is constant", err=True)
