"""Dataset assembly and a full train + evaluate run with its artifacts."""

import time
from pathlib import Path

import logfire

from conservnet import storage
from conservnet.core.config import settings
from conservnet.core.exceptions import UsageError
from conservnet.core.seeding import derive_seed
from conservnet.models import (
    ExperimentConfig,
    GroupedDataset,
    RunSummary,
    SystemName,
)
from conservnet.services import evaluation, ingest, systems, trainer
from conservnet.services.network import init_params

CONFIG_FILE = "config.env"
METRICS_FILE = "metrics.csv"
SUMMARY_FILE = "summary.json"
CHECKPOINT_FILE = "checkpoint.npz"
TRAIN_FILE = "train.csv"
TEST_FILE = "test.csv"


def _generate(cfg: ExperimentConfig, seed: int) -> GroupedDataset:
    n, m = cfg.n_groups, cfg.points_per_group
    match cfg.system:
        case SystemName.S1 | SystemName.S2 | SystemName.S3:
            return systems.generate_synthetic(cfg.system, n, m, seed, cfg.s1_form)
        case SystemName.LOTKA_VOLTERRA:
            return systems.simulate_lotka_volterra(n, m, seed)
        case SystemName.KEPLER:
            return systems.simulate_kepler(
                n, m, seed, fixed_l=cfg.fixed_l, target=cfg.kepler_target
            )
        case SystemName.NULL:
            return systems.generate_null(n, m, seed)
        case SystemName.DOUBLE_PENDULUM:
            raise UsageError("The double pendulum is loaded, not generated")


def _modify(cfg: ExperimentConfig, dataset: GroupedDataset, seed: int) -> GroupedDataset:
    if cfg.polar:
        dataset = systems.to_polar(dataset)
    if cfg.nuisance:
        dataset = systems.add_nuisance(dataset, derive_seed(seed, "nuisance"))
    if cfg.noise_strength:
        dataset = systems.add_observation_noise(
            dataset, cfg.noise_strength, derive_seed(seed, "observation_noise")
        )
    return dataset


def build_datasets(cfg: ExperimentConfig) -> tuple[GroupedDataset, GroupedDataset]:
    """Train and equally sized test data for ``cfg``, modifiers applied."""
    if cfg.system is SystemName.DOUBLE_PENDULUM:
        path = cfg.data_path or settings.DOUBLE_PENDULUM_PATH
        if path is None:
            raise UsageError(
                "double_pendulum needs data_path or CONSERVNET_DOUBLE_PENDULUM_PATH"
            )
        train_data, test_data = ingest.load_double_pendulum(path)
        return (
            _modify(cfg, train_data, cfg.seed),
            _modify(cfg, test_data, derive_seed(cfg.seed, "test")),
        )

    test_seed = derive_seed(cfg.seed, "test")
    train_data = _generate(cfg, cfg.seed)
    test_data = _generate(cfg, test_seed)
    return _modify(cfg, train_data, cfg.seed), _modify(cfg, test_data, test_seed)


def run_dir(cfg: ExperimentConfig) -> Path:
    if cfg.output_dir is not None:
        return cfg.output_dir
    return settings.OUTPUT_ROOT / f"{cfg.system.value}-{cfg.config_hash}"


def run_experiment(
    cfg: ExperimentConfig,
    train_data: GroupedDataset | None = None,
    test_data: GroupedDataset | None = None,
) -> RunSummary:
    """Train from scratch and write config.env, metrics.csv, checkpoint.npz, summary.json."""
    out = run_dir(cfg)
    out.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()

    with logfire.span(
        "experiment {system} {config_hash}",
        system=cfg.system.value,
        config_hash=cfg.config_hash,
        output_dir=str(out),
    ):
        if train_data is None:
            train_data, test_data = build_datasets(cfg)
        storage.write_text(text=cfg.to_env_text(), path=out / CONFIG_FILE)

        metrics_path = out / METRICS_FILE
        metrics_path.unlink(missing_ok=True)
        model = init_params(cfg.layer_dims(train_data.dim), seed=cfg.seed)
        params, report = trainer.train(
            train_data,
            test_data,
            model,
            cfg.train_config(),
            on_snapshot=lambda snapshot: storage.append_metrics(
                snapshot=snapshot, path=metrics_path
            ),
        )

        checkpoint = storage.save_checkpoint(params=params, path=out / CHECKPOINT_FILE)
        report = report.model_copy(update={"checkpoint_path": str(checkpoint)})
        final = report.final
        summary = RunSummary(
            config=cfg.model_dump(mode="json", exclude={"config_hash"}),
            config_hash=cfg.config_hash,
            stop_reason=report.stop_reason.value,
            stopped_epoch=report.stopped_epoch,
            train=evaluation.evaluate(params, train_data),
            test=None if test_data is None else evaluation.evaluate(params, test_data),
            final_train_loss=None if final is None else final.train_loss,
            final_test_loss=None if final is None else final.test_loss,
            checkpoint_path=str(checkpoint),
            runtime=time.perf_counter() - started,
            report=report,
        )
        storage.write_report(report=summary, path=out / SUMMARY_FILE)
        logfire.info(
            "Run finished",
            rho=summary.rho,
            stop_reason=summary.stop_reason,
            stopped_epoch=summary.stopped_epoch,
        )
    return summary
