"""Metrics on trained models: correlation with the ground truth, intra-group
spread, linear calibration, grid cross-sections and noise response."""

from collections.abc import Mapping, Sequence

import logfire
import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from conservnet.core.exceptions import (
    ArgumentError,
    DegenerateFitError,
    DimensionError,
    UndefinedCorrelationError,
)
from conservnet.models import (
    PRIMARY_INVARIANT,
    DeviationMeasure,
    EvalReport,
    FloatArray,
    GroupedDataset,
    GroupStat,
    Heatmap,
    HeatmapAxis,
    NoiseMode,
    SpreaderNorm,
    TrajectoryResponse,
)
from conservnet.services.loss import deviation, sample_spreading_noise
from conservnet.services.network import MlpParams, predict

DEGENERATE_SPREAD = 1e-4


def _pair(u: ArrayLike, v: ArrayLike) -> tuple[FloatArray, FloatArray]:
    a = np.asarray(u, dtype=np.float64).ravel()
    b = np.asarray(v, dtype=np.float64).ravel()
    if a.shape != b.shape or a.size < 2:
        raise DimensionError(expected=a.shape, got=b.shape)
    return a, b


def pearson(u: ArrayLike, v: ArrayLike) -> float:
    a, b = _pair(u, v)
    if np.ptp(a) == 0.0 or np.ptp(b) == 0.0:
        raise UndefinedCorrelationError()
    rho = float(stats.pearsonr(a, b).statistic)
    return float(np.clip(rho, -1.0, 1.0))


def split_by_group(values: ArrayLike, dataset: GroupedDataset) -> list[FloatArray]:
    flat = np.asarray(values, dtype=np.float64).ravel()
    if flat.size != dataset.n_points:
        raise DimensionError(expected=dataset.n_points, got=flat.size)
    bounds = np.cumsum([group.size for group in dataset.groups])[:-1]
    return np.split(flat, bounds)


def sigma_bar(grouped: Sequence[ArrayLike]) -> float:
    """Mean over groups of the population std of the outputs in each group."""
    if not grouped:
        raise ArgumentError("sigma_bar needs at least one group")
    stds = [deviation(group, DeviationMeasure.STD) for group in grouped]
    return float(np.mean(stds))


def calibrate(model_out: ArrayLike, truth: ArrayLike) -> tuple[float, float, float]:
    """Least squares truth ~ a * model_out + b, returns (a, b, R^2)."""
    x, y = _pair(model_out, truth)
    if np.ptp(x) == 0.0:
        raise DegenerateFitError()
    fit = stats.linregress(x, y)
    a, b = float(fit.slope), float(fit.intercept)

    residual = float(np.sum((y - (a * x + b)) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0:
        r2 = 1.0 if residual == 0.0 else 0.0
    else:
        r2 = 1.0 - residual / total
    return a, b, r2


def is_degenerate(outputs: FloatArray) -> bool:
    """Output spread negligible next to its magnitude: the model collapsed to a constant."""
    scale = 1.0 + float(np.mean(np.abs(outputs)))
    return deviation(outputs, DeviationMeasure.STD) <= DEGENERATE_SPREAD * scale


def rho_or_none(outputs: FloatArray, truth: FloatArray | None) -> float | None:
    if truth is None:
        return None
    try:
        return pearson(outputs, truth)
    except UndefinedCorrelationError:
        return None


def evaluate(
    params: MlpParams, dataset: GroupedDataset, invariant: str = PRIMARY_INVARIANT
) -> EvalReport:
    outputs = predict(params, dataset.stacked_states())
    per_group = split_by_group(outputs, dataset)
    groups = [
        GroupStat(
            group_id=group.group_id,
            mean=float(np.mean(out)),
            std=deviation(out, DeviationMeasure.STD),
        )
        for group, out in zip(dataset.groups, per_group, strict=True)
    ]
    report = EvalReport(sigma_bar=sigma_bar(per_group), groups=groups)

    truth = dataset.invariant_per_row(invariant)
    if is_degenerate(outputs):
        logfire.warn("Model output is constant on {dataset}", dataset=dataset.name)
        return report.model_copy(update={"degenerate": True})
    if truth is None:
        return report

    a, b, r2 = calibrate(outputs, truth)
    return report.model_copy(
        update={"rho": rho_or_none(outputs, truth), "a": a, "b": b, "r2": r2}
    )


def grid_axis(name: str, low: float, high: float, resolution: int) -> HeatmapAxis:
    if resolution < 1:
        raise ArgumentError(f"Resolution must be positive, got {resolution}")
    return HeatmapAxis(name=name, values=np.linspace(low, high, resolution))


def cross_section(
    params: MlpParams,
    variables: Sequence[str],
    fixed: Mapping[str, float],
    rows: HeatmapAxis,
    cols: HeatmapAxis,
    rescale: Sequence[float] | None = None,
) -> Heatmap:
    """Model output over a 2-D slice; every variable is either fixed or free.

    Coordinates are in raw units and multiplied by ``rescale`` before the
    network sees them.
    """
    names = list(variables)
    covered = [*fixed, rows.name, cols.name]
    if sorted(covered) != sorted(names) or rows.name == cols.name:
        raise ArgumentError(
            f"Fixed {sorted(fixed)} and free ({rows.name}, {cols.name}) "
            f"must cover {names} exactly once"
        )

    u, v = np.meshgrid(rows.values, cols.values, indexing="ij")
    batch = np.empty((u.size, len(names)))
    for column, name in enumerate(names):
        if name == rows.name:
            batch[:, column] = u.ravel()
        elif name == cols.name:
            batch[:, column] = v.ravel()
        else:
            batch[:, column] = fixed[name]
    if rescale is not None:
        batch = batch * np.asarray(rescale, dtype=np.float64)

    values = predict(params, batch).reshape(u.shape)
    return Heatmap(values=values, rows=rows, cols=cols, fixed=dict(fixed))


def trajectory_response(
    params: MlpParams,
    dataset: GroupedDataset,
    R: float = 1.0,
    norm: SpreaderNorm = SpreaderNorm.L2,
    seed: int = 0,
    mode: NoiseMode = NoiseMode.BATCH_MAX,
) -> TrajectoryResponse:
    """Outputs along the recorded states and along a spreading-noise perturbed copy."""
    states = dataset.stacked_states()
    noise = sample_spreading_noise(states.shape, R, norm, seed, mode)
    return TrajectoryResponse(
        clean=predict(params, states),
        noised=predict(params, states + noise),
    )
