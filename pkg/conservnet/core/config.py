import warnings
from pathlib import Path
from typing import Literal, Self

from pydantic import computed_field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="CONSERVNET_",
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
    )
    PROJECT_NAME: str = "conservnet"
    ENVIRONMENT: Literal["local", "ci", "production"] = "local"

    # default root for every artifact directory; commands may override it
    OUTPUT_ROOT: Path = Path("runs")

    LOGFIRE_TOKEN: str = ""
    LOG_CONSOLE: bool = True

    SWEEP_WORKERS: int = 1

    # first trial of the real double pendulum recording, four columns
    DOUBLE_PENDULUM_PATH: Path | None = None

    @computed_field
    @property
    def logfire_enabled(self) -> bool:
        return bool(self.LOGFIRE_TOKEN)

    @model_validator(mode="after")
    def _check_sweep_workers(self) -> Self:
        if self.SWEEP_WORKERS < 1:
            message = (
                f"SWEEP_WORKERS is {self.SWEEP_WORKERS}, "
                "sweeps will fall back to a single worker."
            )
            if self.ENVIRONMENT == "local":
                warnings.warn(message, stacklevel=1)
                self.SWEEP_WORKERS = 1
            else:
                raise ValueError(message)
        return self


settings = Settings()
