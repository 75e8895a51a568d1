from pathlib import Path

import numpy as np
import pytest

from conservnet.core.exceptions import FormatError, MissingArtifactError, ParseError
from conservnet.services.ingest import (
    DP_CANONICAL_ROWS,
    ideal_dp_crosssection,
    load_double_pendulum,
    read_trajectory,
)


def _trajectory(n: int = DP_CANONICAL_ROWS) -> np.ndarray:
    t = np.arange(n) * 0.01
    return np.column_stack(
        [
            1.3 * np.sin(t),
            1.1 * np.cos(1.7 * t),
            10.0 * np.cos(t),
            -9.5 * np.sin(1.7 * t),
        ]
    )


def _write(path: Path, rows: np.ndarray, header: bool = True) -> Path:
    lines = ["theta1,theta2,omega1,omega2"] if header else []
    lines += [",".join(repr(float(v)) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def test_split_and_scaling(tmp_path: Path) -> None:
    rows = _trajectory()
    train, test = load_double_pendulum(_write(tmp_path / "dp.csv", rows))

    assert train.n_groups == test.n_groups == 1
    assert train.groups[0].size == 654
    assert test.groups[0].size == 164
    assert not train.has_invariant
    assert train.rescale_log == (1.0, 1.0, 0.1, 0.1)
    np.testing.assert_allclose(train.groups[0].states[:, 2], rows[:654, 2] * 0.1)
    # train followed by test is the original order
    joined = np.vstack([train.unscaled_states(), test.unscaled_states()])
    np.testing.assert_allclose(joined, rows, rtol=1e-15)


def test_headerless_file_and_whitespace(tmp_path: Path) -> None:
    path = tmp_path / "dp.csv"
    path.write_text(" 0.1, 0.2 ,1.0,2.0 \n\n0.3,0.4,3.0,4.0\n")
    np.testing.assert_array_equal(
        read_trajectory(path), [[0.1, 0.2, 1.0, 2.0], [0.3, 0.4, 3.0, 4.0]]
    )


def test_reload_is_deterministic(tmp_path: Path) -> None:
    path = _write(tmp_path / "dp.csv", _trajectory(100))
    first, _ = load_double_pendulum(path)
    second, _ = load_double_pendulum(path)
    np.testing.assert_array_equal(first.stacked_states(), second.stacked_states())


def test_malformed_row_reports_line(tmp_path: Path) -> None:
    path = tmp_path / "dp.csv"
    path.write_text("theta1,theta2,omega1,omega2\n0,0,0,0\n0,abc,0,0\n")
    with pytest.raises(ParseError) as info:
        read_trajectory(path)
    assert info.value.line == 3


def test_nan_is_rejected(tmp_path: Path) -> None:
    path = tmp_path / "dp.csv"
    path.write_text("0,0,0,0\n0,nan,0,0\n")
    with pytest.raises(ParseError):
        read_trajectory(path)


def test_wrong_column_count(tmp_path: Path) -> None:
    path = tmp_path / "dp.csv"
    path.write_text("0,0,0\n1,1,1\n")
    with pytest.raises(FormatError):
        read_trajectory(path)


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(MissingArtifactError):
        load_double_pendulum(tmp_path / "nope.csv")


def test_omega_plane_examples() -> None:
    grid = np.array([-2.0, 0.0, 2.0])
    np.testing.assert_array_equal(
        ideal_dp_crosssection("omega_plane", grid, grid, (0, 0, 0, 0)), np.zeros((3, 3))
    )
    surface = ideal_dp_crosssection("omega_plane", grid, grid, (1, 0, 0, 0))
    assert surface[2, 1] == 4.0
    assert surface.shape == (3, 3)


def test_theta_plane_is_even() -> None:
    grid = np.linspace(-np.pi, np.pi, 9)
    surface = ideal_dp_crosssection("theta_plane", grid, grid)
    np.testing.assert_allclose(surface, surface[::-1, ::-1], atol=1e-12)
