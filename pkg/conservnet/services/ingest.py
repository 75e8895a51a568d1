"""Real double pendulum recording and the ideal-Hamiltonian cross-sections."""

import math
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

import logfire
import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from conservnet.core.exceptions import (
    ArgumentError,
    FormatError,
    MissingArtifactError,
    ParseError,
)
from conservnet.models import FloatArray, Group, GroupedDataset, SystemName

DP_VARIABLES = ("theta1", "theta2", "omega1", "omega2")
DP_RESCALE = (1.0, 1.0, 0.1, 0.1)
DP_TIME_STEP = 0.01
DP_TRAIN_FRACTION = 0.8
DP_CANONICAL_ROWS = 818

# default surface constants, c1..c4
OMEGA_PLANE_CONSTANTS = (1.0, 0.32, 0.82, -170.95)
THETA_PLANE_CONSTANTS = (41.0, -124.13, -46.82, 57.0)
THETA_PLANE_OMEGA = (5.0, 10.0)

CrossSectionKind = Literal["omega_plane", "theta_plane"]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _has_header(path: Path) -> bool:
    # a header has no numeric cell; a partly numeric first line is a bad data row
    with path.open() as handle:
        cells = [cell.strip() for cell in handle.readline().split(",") if cell.strip()]
    return bool(cells) and not any(_is_number(cell) for cell in cells)


def read_trajectory(path: Path) -> FloatArray:
    """Four finite numeric columns, optional header, blank lines ignored."""
    if not path.is_file():
        raise MissingArtifactError(path, "Trajectory")

    header = _has_header(path)
    try:
        frame = pd.read_csv(
            path,
            header=None,
            skiprows=1 if header else 0,
            skipinitialspace=True,
            skip_blank_lines=True,
            dtype=str,
            keep_default_na=False,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    frame = frame.apply(lambda column: column.str.strip())
    # trailing commas produce empty columns
    frame = frame.loc[:, ~(frame == "").all()]
    if frame.shape[1] != 4:
        raise FormatError(f"{path}: expected 4 columns, found {frame.shape[1]}")

    first_line = 2 if header else 1
    values = np.empty(frame.shape, dtype=np.float64)
    for row, cells in enumerate(frame.itertuples(index=False)):
        try:
            values[row] = [float(cell) for cell in cells]
        except ValueError as exc:
            raise ParseError(path, first_line + row, str(exc)) from exc
        if not np.all(np.isfinite(values[row])):
            raise ParseError(path, first_line + row, "non-finite value")
    return values


def _single_group(name: str, states: FloatArray, path: Path, offset: int) -> GroupedDataset:
    return GroupedDataset(
        name=name,
        variables=DP_VARIABLES,
        groups=(Group(group_id=0, states=states * np.asarray(DP_RESCALE)),),
        rescale_log=DP_RESCALE,
        meta={
            "system": SystemName.DOUBLE_PENDULUM.value,
            "source": str(path),
            "row_offset": offset,
            "time_step": DP_TIME_STEP,
        },
    )


def split_index(n_rows: int) -> int:
    return math.floor(DP_TRAIN_FRACTION * n_rows)


def load_double_pendulum(path: Path) -> tuple[GroupedDataset, GroupedDataset]:
    """Chronological 80/20 split of one trial; each part is a single group."""
    with logfire.span("load double pendulum {path}", path=str(path)):
        rows = read_trajectory(path)
        if len(rows) != DP_CANONICAL_ROWS:
            logfire.warn(
                "Trajectory has {rows} rows, expected {expected}",
                rows=len(rows),
                expected=DP_CANONICAL_ROWS,
            )
        cut = split_index(len(rows))
        if cut < 1 or cut >= len(rows):
            raise FormatError(f"{path}: too few rows ({len(rows)}) to split")
        train = _single_group("double_pendulum_train", rows[:cut], path, 0)
        test = _single_group("double_pendulum_test", rows[cut:], path, cut)
        logfire.info("Loaded double pendulum", train=cut, test=len(rows) - cut)
    return train, test


def ideal_dp_crosssection(
    kind: CrossSectionKind,
    grid1: ArrayLike,
    grid2: ArrayLike,
    constants: Sequence[float] | None = None,
) -> FloatArray:
    """Ideal Hamiltonian-shaped surface over a rectangular grid.

    ``omega_plane`` at theta = (0, 0): c4 + c1 w1^2 + c2 w2^2 + c3 w1 w2.
    ``theta_plane`` at omega = (5, 10): c1 + c2 cos t1 + c3 cos t2 + c4 cos(t1 - t2).
    Rows follow ``grid1``, columns ``grid2``.
    """
    if constants is None:
        constants = (
            OMEGA_PLANE_CONSTANTS if kind == "omega_plane" else THETA_PLANE_CONSTANTS
        )
    c = np.asarray(constants, dtype=np.float64)
    if c.shape != (4,) or not np.all(np.isfinite(c)):
        raise ArgumentError(f"Need 4 finite constants, got {list(constants)}")
    u, v = np.meshgrid(
        np.asarray(grid1, dtype=np.float64),
        np.asarray(grid2, dtype=np.float64),
        indexing="ij",
    )
    match kind:
        case "omega_plane":
            return c[3] + c[0] * u**2 + c[1] * v**2 + c[2] * u * v
        case "theta_plane":
            return c[0] + c[1] * np.cos(u) + c[2] * np.cos(v) + c[3] * np.cos(u - v)
