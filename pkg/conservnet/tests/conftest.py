from pathlib import Path

import logfire
import numpy as np
import pytest

from conservnet.core.config import settings
from conservnet.models import (
    ExperimentConfig,
    Group,
    GroupedDataset,
    SystemName,
)
from conservnet.services.network import MlpParams, init_params
from conservnet.services.systems import generate_synthetic

logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture(autouse=True)
def output_root(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    root = tmp_path / "runs"
    monkeypatch.setattr(settings, "OUTPUT_ROOT", root)
    return root


@pytest.fixture
def s2_small() -> GroupedDataset:
    return generate_synthetic(SystemName.S2, n_groups=4, points_per_group=12, seed=3)


@pytest.fixture
def tiny_params() -> MlpParams:
    return init_params([3, 6, 6, 1], seed=11)


@pytest.fixture
def toy_dataset() -> GroupedDataset:
    rng = np.random.default_rng(5)
    groups = tuple(
        Group(group_id=i, states=rng.normal(size=(5, 2)), invariant=float(i))
        for i in range(3)
    )
    return GroupedDataset(
        name="toy", variables=("x1", "x2"), groups=groups, rescale_log=(1.0, 1.0)
    )


@pytest.fixture
def tiny_config(tmp_path: Path) -> ExperimentConfig:
    return ExperimentConfig(
        system=SystemName.S2,
        n_groups=3,
        points_per_group=10,
        seed=1,
        hidden_width=8,
        hidden_layers=2,
        epochs=3,
        lr=1e-3,
        eval_every=1,
        output_dir=tmp_path / "run",
    )
