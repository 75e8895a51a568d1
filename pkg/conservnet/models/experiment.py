import hashlib
import json
from pathlib import Path
from typing import Any, Literal, Self

from pydantic import Field, computed_field, model_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from .datasets import SystemName
from .loss import DeviationMeasure, LossConfig, LossVariant, NoiseMode, SpreaderNorm
from .training import EarlyStopConfig, Monitored, TrainConfig

KeplerTarget = Literal["angular_momentum", "energy"]


class ExperimentConfig(BaseSettings):
    """Everything needed to reproduce one run.

    Values come from keyword arguments (CLI flags) first and from a flat
    ``key=value`` file second; the process environment is never consulted.
    """

    model_config = SettingsConfigDict(
        extra="forbid",
        frozen=True,
        case_sensitive=False,
    )

    # data
    system: SystemName = SystemName.S2
    n_groups: int = Field(default=20, ge=1)
    points_per_group: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0)
    s1_form: Literal["standard", "alternate"] = "standard"
    nuisance: bool = False
    polar: bool = False
    noise_strength: float = Field(default=0.0, ge=0)
    fixed_l: float | None = None
    kepler_target: KeplerTarget | None = None
    data_path: Path | None = None

    # network
    hidden_width: int = Field(default=320, ge=1)
    hidden_layers: int = Field(default=4, ge=1)

    # optimisation
    epochs: int = Field(default=50_000, ge=1)
    lr: float = Field(default=5e-5, gt=0)
    eval_every: int = Field(default=100, ge=1)
    patience: int = Field(default=50, ge=1)
    min_delta: float = Field(default=1e-6, ge=0)
    monitored: Monitored | None = None
    early_stop: bool = True

    # loss
    loss_variant: LossVariant = LossVariant.NOISE_VARIANCE
    deviation: DeviationMeasure = DeviationMeasure.STD
    Q: float = Field(default=1.0, gt=0)
    R: float = Field(default=1.0, gt=0)
    spreader_norm: SpreaderNorm = SpreaderNorm.L2
    noise_mode: NoiseMode = NoiseMode.BATCH_MAX

    output_dir: Path | None = None

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, dotenv_settings)

    @model_validator(mode="after")
    def _check_system_options(self) -> Self:
        if self.polar and self.system is not SystemName.KEPLER:
            raise ValueError("polar coordinates only apply to the kepler system")
        if self.fixed_l is not None and self.system is not SystemName.KEPLER:
            raise ValueError("fixed_l only applies to the kepler system")
        return self

    @classmethod
    def load(cls, path: Path | None = None, **overrides: Any) -> Self:
        flags = {key: value for key, value in overrides.items() if value is not None}
        return cls(_env_file=path, **flags)  # type: ignore[call-arg]

    @computed_field
    @property
    def config_hash(self) -> str:
        payload = self.model_dump(mode="json", exclude={"output_dir", "config_hash"})
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]

    def loss_config(self) -> LossConfig:
        return LossConfig(
            variant=self.loss_variant,
            deviation=self.deviation,
            Q=self.Q,
            R=self.R,
            spreader_norm=self.spreader_norm,
            noise_mode=self.noise_mode,
        )

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            lr=self.lr,
            loss=self.loss_config(),
            early_stop=EarlyStopConfig(
                patience=self.patience,
                min_delta=self.min_delta,
                monitored=self.monitored,
                enabled=self.early_stop,
            ),
            seed=self.seed,
            eval_every=self.eval_every,
        )

    def layer_dims(self, input_dim: int) -> list[int]:
        return [input_dim, *([self.hidden_width] * self.hidden_layers), 1]

    def to_env_text(self) -> str:
        """Resolved config as the same flat ``key=value`` format it loads from."""
        payload = self.model_dump(mode="json", exclude={"config_hash"})
        lines = [
            f"{key}={'' if value is None else value}"
            for key, value in payload.items()
            if value is not None
        ]
        return "\n".join(lines) + "\n"
