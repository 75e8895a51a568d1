from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class LossVariant(str, Enum):
    NOISE_VARIANCE = "noise_variance"
    SIMPLE = "simple"


class DeviationMeasure(str, Enum):
    STD = "std"
    VARIANCE = "variance"


class SpreaderNorm(str, Enum):
    L1 = "L1"
    L2 = "L2"
    LINF = "Linf"


class NoiseMode(str, Enum):
    # rows rescaled together so the largest row norm is exactly R
    BATCH_MAX = "batch_max"
    # every row bounded by R on its own
    PER_ROW = "per_row"


class LossConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    variant: LossVariant = LossVariant.NOISE_VARIANCE
    deviation: DeviationMeasure = DeviationMeasure.STD
    Q: float = Field(default=1.0, gt=0, description="Spreading constant.")
    R: float = Field(default=1.0, gt=0, description="Maximum spreading-noise norm.")
    spreader_norm: SpreaderNorm = SpreaderNorm.L2
    noise_mode: NoiseMode = NoiseMode.BATCH_MAX
