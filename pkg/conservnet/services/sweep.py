"""Robustness sweeps: one full run per axis value, failures kept as table rows."""

import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

import logfire

from conservnet.core.config import settings
from conservnet.core.exceptions import ArgumentError, ConservNetError
from conservnet.models import ExperimentConfig, SpreaderNorm, SweepAxis, SweepRow
from conservnet.services.experiment import run_experiment

# (N, M) pairs with N * M fixed at 2,000
DATA_CONDITIONS: tuple[tuple[int, int], ...] = (
    (2, 1000),
    (4, 500),
    (10, 200),
    (20, 100),
    (40, 50),
    (100, 20),
)

DEFAULT_VALUES: dict[SweepAxis, tuple[str, ...]] = {
    SweepAxis.NOISE_STRENGTH: ("0.01", "0.05", "0.1", "0.2"),
    SweepAxis.DATA_CONDITION: tuple(f"{n},{m}" for n, m in DATA_CONDITIONS),
    SweepAxis.Q: ("0.5", "1", "2", "5"),
    SweepAxis.R: ("0.5", "1", "2", "5"),
    SweepAxis.SPREADER_NORM: tuple(norm.value for norm in SpreaderNorm),
    SweepAxis.LEARNING_RATE: ("1e-5", "5e-5", "1e-4"),
    SweepAxis.HIDDEN_WIDTH: ("40", "80", "160", "320"),
}


def parse_data_condition(value: str) -> tuple[int, int]:
    parts = value.strip("() ").replace("x", ",").split(",")
    try:
        n, m = (int(part) for part in parts)
    except ValueError as exc:
        raise ArgumentError(f"Data condition must look like 'N,M', got {value!r}") from exc
    return n, m


def axis_update(axis: SweepAxis, value: str) -> dict[str, Any]:
    """Config fields one sweep value sets."""
    try:
        match axis:
            case SweepAxis.NOISE_STRENGTH:
                return {"noise_strength": float(value)}
            case SweepAxis.DATA_CONDITION:
                n, m = parse_data_condition(value)
                return {"n_groups": n, "points_per_group": m}
            case SweepAxis.Q:
                return {"Q": float(value)}
            case SweepAxis.R:
                return {"R": float(value)}
            case SweepAxis.SPREADER_NORM:
                return {"spreader_norm": SpreaderNorm(value)}
            case SweepAxis.LEARNING_RATE:
                return {"lr": float(value)}
            case SweepAxis.HIDDEN_WIDTH:
                return {"hidden_width": int(value)}
    except ValueError as exc:
        raise ArgumentError(f"Bad {axis.value} value {value!r}") from exc


def sweep_dir(axis: SweepAxis, base: ExperimentConfig) -> Path:
    root = base.output_dir or settings.OUTPUT_ROOT
    return root / f"sweep-{axis.value}-{base.config_hash}"


def cell_config(
    base: ExperimentConfig, axis: SweepAxis, value: str, repeat: int
) -> ExperimentConfig:
    fields = base.model_dump(exclude={"config_hash", "output_dir"})
    fields.update(axis_update(axis, value))
    fields["seed"] = base.seed + repeat
    fields["output_dir"] = sweep_dir(axis, base) / f"{value}-r{repeat}"
    return ExperimentConfig(**fields)


def run_cell(cfg: ExperimentConfig, value: str, repeat: int) -> SweepRow:
    started = time.perf_counter()
    with logfire.span("sweep cell {value} repeat {repeat}", value=value, repeat=repeat):
        try:
            summary = run_experiment(cfg)
        except ConservNetError as exc:
            logfire.error(
                "Sweep cell failed", value=value, repeat=repeat, **exc.detail
            )
            return SweepRow(
                value=value,
                repeat=repeat,
                seed=cfg.seed,
                runtime=time.perf_counter() - started,
                error=f"{exc.error_type}: {exc.message}",
            )
    source = summary.test if summary.test is not None else summary.train
    return SweepRow(
        value=value,
        repeat=repeat,
        seed=cfg.seed,
        rho=summary.rho,
        sigma_bar=source.sigma_bar,
        runtime=time.perf_counter() - started,
    )


def sweep(
    axis: SweepAxis,
    values: Sequence[str] | None,
    base: ExperimentConfig,
    repeats: int = 1,
    workers: int | None = None,
) -> list[SweepRow]:
    """Rows come back in (value, repeat) order whatever the worker count."""
    if repeats < 1:
        raise ArgumentError(f"repeats must be at least 1, got {repeats}")
    values = list(values or DEFAULT_VALUES[axis])
    if not values:
        raise ArgumentError(f"No values to sweep on {axis.value}")
    workers = workers or settings.SWEEP_WORKERS

    # configs are built up front so a bad value fails before any training
    cells = [
        (cell_config(base, axis, value, repeat), value, repeat)
        for value in values
        for repeat in range(repeats)
    ]
    with logfire.span(
        "sweep {axis}", axis=axis.value, cells=len(cells), workers=workers
    ):
        if workers == 1 or len(cells) == 1:
            return [run_cell(*cell) for cell in cells]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_cell, *cell) for cell in cells]
            return [future.result() for future in futures]
