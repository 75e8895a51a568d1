"""Noise-variance loss, the variance-only baseline, and the spreading-noise sampler.

Per group the noise-variance loss is ``dev(F(x)) + |Q - dev(F(x + eps))|``;
the simple baseline keeps only the first term.
"""

import numpy as np
from numpy.typing import ArrayLike

from conservnet.core.exceptions import DimensionError
from conservnet.models import (
    DeviationMeasure,
    FloatArray,
    LossConfig,
    LossVariant,
    NoiseMode,
    SpreaderNorm,
)

STD_GUARD = 1e-12

# largest norm a row of the [-1, 1]^d cube can reach, used by per-row scaling
_CUBE_NORM_BOUND = {
    SpreaderNorm.L1: lambda d: float(d),
    SpreaderNorm.L2: lambda d: float(np.sqrt(d)),
    SpreaderNorm.LINF: lambda d: 1.0,
}


def row_norms(x: ArrayLike, norm: SpreaderNorm) -> FloatArray:
    x = np.asarray(x, dtype=np.float64)
    match norm:
        case SpreaderNorm.L1:
            return np.abs(x).sum(axis=1)
        case SpreaderNorm.L2:
            return np.sqrt((x * x).sum(axis=1))
        case SpreaderNorm.LINF:
            return np.abs(x).max(axis=1)


def sample_spreading_noise(
    shape: tuple[int, int],
    R: float,
    norm: SpreaderNorm = SpreaderNorm.L2,
    seed: int | np.random.Generator = 0,
    mode: NoiseMode = NoiseMode.BATCH_MAX,
) -> FloatArray:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    m, d = shape
    if m < 1 or d < 1:
        raise DimensionError(expected=(1, 1), got=shape)

    raw = rng.uniform(-1.0, 1.0, size=(m, d))
    if mode is NoiseMode.PER_ROW:
        return raw * (R / _CUBE_NORM_BOUND[norm](d))

    norms = row_norms(raw, norm)
    while norms.max() == 0.0:
        raw = rng.uniform(-1.0, 1.0, size=(m, d))
        norms = row_norms(raw, norm)
    return raw * (R / norms.max())


def deviation(values: ArrayLike, measure: DeviationMeasure) -> float:
    """Population variance, or its square root. Exactly 0 on constant input."""
    v = np.asarray(values, dtype=np.float64)
    if np.ptp(v) == 0.0:
        return 0.0
    variance = float(np.mean((v - v.mean()) ** 2))
    if measure is DeviationMeasure.VARIANCE:
        return variance
    return float(np.sqrt(variance))


def deviation_grad(values: ArrayLike, measure: DeviationMeasure) -> FloatArray:
    v = np.asarray(values, dtype=np.float64)
    if np.ptp(v) == 0.0:
        return np.zeros_like(v)
    centered = v - v.mean()
    variance_grad = (2.0 / v.size) * centered
    if measure is DeviationMeasure.VARIANCE:
        return variance_grad
    std = np.sqrt(np.mean(centered**2))
    return variance_grad / (2.0 * max(std, STD_GUARD))


def _check_lengths(clean: FloatArray, noised: FloatArray) -> None:
    if clean.shape != noised.shape or clean.ndim != 1 or clean.size < 1:
        raise DimensionError(expected=tuple(clean.shape), got=tuple(noised.shape))


def group_loss(clean_out: ArrayLike, noised_out: ArrayLike, cfg: LossConfig) -> float:
    clean = np.asarray(clean_out, dtype=np.float64)
    noised = np.asarray(noised_out, dtype=np.float64)
    _check_lengths(clean, noised)

    loss = deviation(clean, cfg.deviation)
    if cfg.variant is LossVariant.NOISE_VARIANCE:
        loss += abs(cfg.Q - deviation(noised, cfg.deviation))
    return loss


def group_loss_grad(
    clean_out: ArrayLike, noised_out: ArrayLike, cfg: LossConfig
) -> tuple[FloatArray, FloatArray]:
    """(dL/d clean_out, dL/d noised_out) for one group."""
    clean = np.asarray(clean_out, dtype=np.float64)
    noised = np.asarray(noised_out, dtype=np.float64)
    _check_lengths(clean, noised)

    grad_clean = deviation_grad(clean, cfg.deviation)
    if cfg.variant is LossVariant.SIMPLE:
        return grad_clean, np.zeros_like(noised)

    # |Q - dev| flips direction once dev(noised) crosses Q
    sign = np.sign(cfg.Q - deviation(noised, cfg.deviation))
    grad_noised = -sign * deviation_grad(noised, cfg.deviation)
    return grad_clean, grad_noised
