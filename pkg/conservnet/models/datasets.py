from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from conservnet.core.exceptions import DimensionError

FloatArray = NDArray[np.float64]

PRIMARY_INVARIANT = "C"


class SystemName(str, Enum):
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    LOTKA_VOLTERRA = "lotka_volterra"
    KEPLER = "kepler"
    NULL = "null"
    DOUBLE_PENDULUM = "double_pendulum"


class Invariant(str, Enum):
    S1 = "s1"
    # the alternative S1 form x1 - 2 x2 x3 + 3 x4^2
    S1_ALT = "s1_alt"
    S2 = "s2"
    S3 = "s3"
    LOTKA_VOLTERRA = "lotka_volterra"
    KEPLER_ANGULAR_MOMENTUM = "kepler_angular_momentum"
    KEPLER_ENERGY = "kepler_energy"


@dataclass(frozen=True, slots=True)
class Group:
    """One trial: M stored (rescaled) states sharing a single invariant value."""

    group_id: int
    states: FloatArray
    invariant: float | None = None
    aux_invariants: Mapping[str, float] = field(default_factory=dict[str, float])

    @property
    def size(self) -> int:
        return int(self.states.shape[0])


@dataclass(frozen=True, slots=True)
class GroupedDataset:
    name: str
    variables: tuple[str, ...]
    groups: tuple[Group, ...]
    # stored value = raw value * factor, one factor per variable
    rescale_log: tuple[float, ...]
    meta: Mapping[str, Any] = field(default_factory=dict[str, Any])

    def __post_init__(self) -> None:
        d = len(self.variables)
        if len(self.rescale_log) != d:
            raise DimensionError(expected=d, got=len(self.rescale_log))
        for group in self.groups:
            if group.states.ndim != 2 or group.states.shape[1] != d:
                raise DimensionError(expected=d, got=tuple(group.states.shape))

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def n_points(self) -> int:
        return sum(group.size for group in self.groups)

    @property
    def has_invariant(self) -> bool:
        return bool(self.groups) and all(g.invariant is not None for g in self.groups)

    @property
    def aux_invariant_names(self) -> tuple[str, ...]:
        if not self.groups:
            return ()
        return tuple(self.groups[0].aux_invariants)

    def stacked_states(self) -> FloatArray:
        if not self.groups:
            return np.empty((0, self.dim))
        return np.vstack([group.states for group in self.groups])

    def invariant_per_row(self, key: str = PRIMARY_INVARIANT) -> FloatArray | None:
        values: list[float] = []
        for group in self.groups:
            value = (
                group.invariant
                if key == PRIMARY_INVARIANT
                else group.aux_invariants.get(key)
            )
            if value is None:
                return None
            values.append(value)
        return np.repeat(np.asarray(values), [group.size for group in self.groups])

    def unscale(self, states: FloatArray) -> FloatArray:
        return states / np.asarray(self.rescale_log)

    def unscaled_states(self) -> FloatArray:
        return self.unscale(self.stacked_states())

    def with_groups(self, groups: Sequence[Group], **changes: Any) -> "GroupedDataset":
        return replace(self, groups=tuple(groups), **changes)


class DatasetMeta(BaseModel):
    """JSON sidecar written next to every dataset CSV."""

    name: str
    variables: list[str]
    rescale_log: list[float]
    n_groups: int = Field(ge=0)
    points_per_group: list[int] = Field(default_factory=list)
    invariant_columns: list[str] = Field(default_factory=list)
    extra: dict[str, Any] = Field(default_factory=dict)
