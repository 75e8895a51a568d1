import pytest

from conservnet.core.exceptions import ArgumentError, TrainingDivergenceError
from conservnet.models import ExperimentConfig, SpreaderNorm, SweepAxis
from conservnet.services import sweep as sweep_service
from conservnet.services.experiment import run_experiment
from conservnet.services.sweep import (
    DATA_CONDITIONS,
    axis_update,
    cell_config,
    parse_data_condition,
    sweep,
)


def test_data_conditions_keep_total_points() -> None:
    assert all(n * m == 2000 for n, m in DATA_CONDITIONS)
    assert parse_data_condition("10,200") == (10, 200)
    assert parse_data_condition("(4, 500)") == (4, 500)
    with pytest.raises(ArgumentError):
        parse_data_condition("ten")


@pytest.mark.parametrize(
    ("axis", "value", "expected"),
    [
        (SweepAxis.NOISE_STRENGTH, "0.1", {"noise_strength": 0.1}),
        (SweepAxis.DATA_CONDITION, "40,50", {"n_groups": 40, "points_per_group": 50}),
        (SweepAxis.Q, "2", {"Q": 2.0}),
        (SweepAxis.R, "0.5", {"R": 0.5}),
        (SweepAxis.SPREADER_NORM, "L1", {"spreader_norm": SpreaderNorm.L1}),
        (SweepAxis.LEARNING_RATE, "1e-4", {"lr": 1e-4}),
        (SweepAxis.HIDDEN_WIDTH, "80", {"hidden_width": 80}),
    ],
)
def test_axis_update(axis: SweepAxis, value: str, expected: dict[str, object]) -> None:
    assert axis_update(axis, value) == expected


def test_axis_update_rejects_garbage() -> None:
    with pytest.raises(ArgumentError):
        axis_update(SweepAxis.HIDDEN_WIDTH, "wide")


def test_cell_config_seeds_and_dirs(tiny_config: ExperimentConfig) -> None:
    cell = cell_config(tiny_config, SweepAxis.Q, "2", repeat=3)
    assert cell.Q == 2.0
    assert cell.seed == tiny_config.seed + 3
    assert cell.output_dir is not None
    assert cell.output_dir.name == "2-r3"
    assert cell.config_hash != tiny_config.config_hash


def test_single_value_sweep_matches_plain_run(tiny_config: ExperimentConfig) -> None:
    [row] = sweep(SweepAxis.Q, ["1"], tiny_config, workers=1)
    assert row.error is None
    assert row.seed == tiny_config.seed

    plain = run_experiment(
        cell_config(tiny_config, SweepAxis.Q, "1", 0).model_copy(
            update={"output_dir": tiny_config.output_dir}
        )
    )
    assert row.rho == plain.rho


def test_failed_cell_becomes_row(
    tiny_config: ExperimentConfig, monkeypatch: pytest.MonkeyPatch
) -> None:
    calls: list[float] = []

    def fake_run(cfg: ExperimentConfig):
        calls.append(cfg.noise_strength)
        if cfg.noise_strength > 0.05:
            raise TrainingDivergenceError(epoch=7, detail="non-finite loss")
        return run_experiment(cfg)

    monkeypatch.setattr(sweep_service, "run_experiment", fake_run)
    rows = sweep(SweepAxis.NOISE_STRENGTH, ["0.01", "0.1"], tiny_config, workers=1)

    assert [row.value for row in rows] == ["0.01", "0.1"]
    assert rows[0].error is None
    assert rows[1].error is not None and "non-finite loss" in rows[1].error
    assert rows[1].rho is None
    assert calls == [0.01, 0.1]


def test_repeats_shift_the_seed(
    tiny_config: ExperimentConfig, monkeypatch: pytest.MonkeyPatch
) -> None:
    def always_diverges(cfg: ExperimentConfig):
        raise TrainingDivergenceError(epoch=0)

    monkeypatch.setattr(sweep_service, "run_experiment", always_diverges)
    rows = sweep(SweepAxis.Q, ["1"], tiny_config, repeats=3, workers=1)
    assert [row.seed for row in rows] == [1, 2, 3]
    assert [row.repeat for row in rows] == [0, 1, 2]
    with pytest.raises(ArgumentError):
        sweep(SweepAxis.Q, ["1"], tiny_config, repeats=0)
