from pathlib import Path

import pytest
from pydantic import ValidationError

from conservnet.core.config import Settings
from conservnet.core.seeding import derive_seed, make_rng, spawn_rngs
from conservnet.models import ExperimentConfig, SystemName, TrainConfig


def test_flags_override_file_values(tmp_path: Path) -> None:
    path = tmp_path / "exp.env"
    path.write_text("system=s3\nepochs=10\nQ=2.5\n")
    cfg = ExperimentConfig.load(path, epochs=4, lr=None)
    assert cfg.system is SystemName.S3
    assert cfg.epochs == 4
    assert cfg.Q == 2.5
    assert cfg.lr == 5e-5


def test_config_hash_ignores_output_dir(tmp_path: Path) -> None:
    a = ExperimentConfig(seed=3, output_dir=tmp_path / "a")
    b = ExperimentConfig(seed=3, output_dir=tmp_path / "b")
    c = ExperimentConfig(seed=4)
    assert a.config_hash == b.config_hash
    assert a.config_hash != c.config_hash
    assert len(a.config_hash) == 12


def test_env_text_round_trips(tmp_path: Path) -> None:
    cfg = ExperimentConfig(system=SystemName.KEPLER, fixed_l=-1.5, polar=True, epochs=7)
    path = tmp_path / "config.env"
    path.write_text(cfg.to_env_text())
    assert ExperimentConfig.load(path) == cfg


def test_kepler_only_options() -> None:
    with pytest.raises(ValidationError):
        ExperimentConfig(system=SystemName.S2, polar=True)
    with pytest.raises(ValidationError):
        ExperimentConfig(system=SystemName.S1, fixed_l=1.0)
    with pytest.raises(ValidationError):
        ExperimentConfig(unknown_field=1)  # type: ignore[call-arg]


def test_seed_must_be_non_negative() -> None:
    with pytest.raises(ValidationError):
        ExperimentConfig(seed=-1)
    with pytest.raises(ValidationError):
        TrainConfig(seed=-1)
    assert ExperimentConfig(seed=0).train_config().seed == 0


def test_process_environment_is_not_read(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("EPOCHS", "3")
    assert ExperimentConfig().epochs == 50_000


def test_settings_from_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("CONSERVNET_OUTPUT_ROOT", str(tmp_path))
    monkeypatch.setenv("CONSERVNET_SWEEP_WORKERS", "4")
    settings = Settings(_env_file=None)  # type: ignore[call-arg]
    assert settings.OUTPUT_ROOT == tmp_path
    assert settings.SWEEP_WORKERS == 4
    assert not settings.logfire_enabled


def test_bad_worker_count(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("CONSERVNET_SWEEP_WORKERS", "0")
    with pytest.warns(UserWarning):
        assert Settings(_env_file=None).SWEEP_WORKERS == 1  # type: ignore[call-arg]
    monkeypatch.setenv("CONSERVNET_ENVIRONMENT", "production")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)  # type: ignore[call-arg]


def test_seed_streams() -> None:
    assert derive_seed(1, "test") == derive_seed(1, "test")
    assert derive_seed(1, "test") != derive_seed(1, "train")
    assert derive_seed(1, "test") != derive_seed(2, "test")
    assert make_rng(5).random() == make_rng(5).random()
    first, second = spawn_rngs(0, 2, "groups")
    assert first.random() != second.random()
