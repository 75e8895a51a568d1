from enum import Enum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .loss import LossConfig


class Monitored(str, Enum):
    TRAIN_LOSS = "train_loss"
    TEST_LOSS = "test_loss"


class EarlyStopConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    patience: int = Field(default=50, ge=1, description="Snapshots without improvement.")
    min_delta: float = Field(default=1e-6, ge=0)
    # None: test_loss when test data exists, train_loss otherwise
    monitored: Monitored | None = None
    enabled: bool = True


class TrainConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    epochs: int = Field(default=50_000, ge=1)
    lr: float = Field(default=5e-5, gt=0)
    beta1: float = Field(default=0.9, ge=0, lt=1)
    beta2: float = Field(default=0.999, ge=0, lt=1)
    eps: float = Field(default=1e-8, gt=0)
    loss: LossConfig = Field(default_factory=LossConfig)
    early_stop: EarlyStopConfig = Field(default_factory=EarlyStopConfig)
    seed: int = Field(default=0, ge=0)
    eval_every: int = Field(default=100, ge=1)


class StopReason(str, Enum):
    EPOCH_LIMIT = "epoch_limit"
    EARLY_STOP = "early_stop"


class Snapshot(BaseModel):
    epoch: int = Field(ge=0)
    train_loss: float
    test_loss: float | None = None
    rho_train: float | None = None
    rho_test: float | None = None
    sigma_bar_train: float
    sigma_bar_test: float | None = None

    @property
    def rho(self) -> float | None:
        return self.rho_test if self.rho_test is not None else self.rho_train


class TrainReport(BaseModel):
    snapshots: list[Snapshot] = Field(default_factory=list)
    stop_reason: StopReason = StopReason.EPOCH_LIMIT
    stopped_epoch: int = 0
    monitored: Monitored = Monitored.TRAIN_LOSS
    early_stop: EarlyStopConfig = Field(default_factory=EarlyStopConfig)
    checkpoint_path: str | None = None

    @model_validator(mode="after")
    def _check_epoch_order(self) -> Self:
        epochs = [snapshot.epoch for snapshot in self.snapshots]
        if any(later <= earlier for earlier, later in zip(epochs, epochs[1:])):
            raise ValueError("Snapshots must be strictly increasing in epoch")
        return self

    @property
    def final(self) -> Snapshot | None:
        return self.snapshots[-1] if self.snapshots else None
