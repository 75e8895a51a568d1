import numpy as np
import pytest

from conservnet.core.exceptions import DimensionError
from conservnet.models import (
    DeviationMeasure,
    LossConfig,
    LossVariant,
    NoiseMode,
    SpreaderNorm,
)
from conservnet.services.loss import (
    deviation,
    deviation_grad,
    group_loss,
    group_loss_grad,
    row_norms,
    sample_spreading_noise,
)


def test_constant_outputs_cost_q() -> None:
    cfg = LossConfig(Q=2.5)
    zeros = np.zeros(10)
    assert group_loss(zeros, zeros, cfg) == pytest.approx(2.5, abs=1e-12)


def test_simple_loss_ignores_noised_branch() -> None:
    cfg = LossConfig(variant=LossVariant.SIMPLE)
    clean = np.array([1.0, -1.0])
    assert group_loss(clean, np.array([100.0, -7.0]), cfg) == pytest.approx(1.0)
    _, grad_noised = group_loss_grad(clean, np.array([100.0, -7.0]), cfg)
    np.testing.assert_array_equal(grad_noised, np.zeros(2))


def test_noise_variance_loss_example() -> None:
    cfg = LossConfig(deviation=DeviationMeasure.VARIANCE, Q=1.0)
    clean = np.array([1.0, 3.0])  # variance 1
    noised = np.array([0.0, 6.0])  # variance 9
    assert group_loss(clean, noised, cfg) == pytest.approx(1.0 + 8.0)


def test_loss_rejects_mismatched_lengths() -> None:
    with pytest.raises(DimensionError):
        group_loss(np.zeros(3), np.zeros(4), LossConfig())


@pytest.mark.parametrize("measure", list(DeviationMeasure))
def test_deviation_grad_matches_finite_difference(measure: DeviationMeasure) -> None:
    v = np.random.default_rng(2).normal(size=8)
    h = 1e-6
    numeric = np.array(
        [
            (deviation(v + h * e, measure) - deviation(v - h * e, measure)) / (2 * h)
            for e in np.eye(v.size)
        ]
    )
    np.testing.assert_allclose(deviation_grad(v, measure), numeric, rtol=1e-6, atol=1e-9)


def test_std_grad_is_zero_for_constant_values() -> None:
    np.testing.assert_array_equal(
        deviation_grad(np.full(4, 3.0), DeviationMeasure.STD), np.zeros(4)
    )


@pytest.mark.parametrize("norm", list(SpreaderNorm))
def test_batch_max_noise_reaches_radius(norm: SpreaderNorm) -> None:
    noise = sample_spreading_noise((50, 4), R=0.7, norm=norm, seed=1)
    assert noise.shape == (50, 4)
    assert row_norms(noise, norm).max() == pytest.approx(0.7)


@pytest.mark.parametrize("norm", list(SpreaderNorm))
def test_per_row_noise_bounded_by_radius(norm: SpreaderNorm) -> None:
    noise = sample_spreading_noise(
        (200, 3), R=2.0, norm=norm, seed=4, mode=NoiseMode.PER_ROW
    )
    assert row_norms(noise, norm).max() <= 2.0 + 1e-12


def test_noise_is_seeded_and_fresh() -> None:
    a = sample_spreading_noise((5, 2), R=1.0, seed=9)
    b = sample_spreading_noise((5, 2), R=1.0, seed=9)
    np.testing.assert_array_equal(a, b)

    rng = np.random.default_rng(9)
    first = sample_spreading_noise((5, 2), R=1.0, seed=rng)
    second = sample_spreading_noise((5, 2), R=1.0, seed=rng)
    assert not np.array_equal(first, second)


def test_noise_rejects_empty_shape() -> None:
    with pytest.raises(DimensionError):
        sample_spreading_noise((0, 3), R=1.0)


@pytest.mark.parametrize("measure", list(DeviationMeasure))
def test_constant_vectors_have_exactly_zero_spread(measure: DeviationMeasure) -> None:
    cfg = LossConfig(deviation=measure, Q=1.5)
    for c in np.random.default_rng(0).uniform(-10.0, 10.0, size=200):
        flat = np.full(12, c)
        assert deviation(flat, measure) == 0.0
        grad_clean, grad_noised = group_loss_grad(flat, flat, cfg)
        assert not grad_clean.any()
        assert not grad_noised.any()
        assert group_loss(flat, flat, cfg) == 1.5


@pytest.mark.parametrize("measure", list(DeviationMeasure))
def test_loss_is_invariant_to_output_sign(measure: DeviationMeasure) -> None:
    rng = np.random.default_rng(3)
    clean, noised = rng.normal(size=9), rng.normal(scale=2.0, size=9)
    cfg = LossConfig(deviation=measure)
    assert group_loss(-clean, -noised, cfg) == pytest.approx(group_loss(clean, noised, cfg))
    flipped = group_loss_grad(-clean, -noised, cfg)
    for got, expected in zip(flipped, group_loss_grad(clean, noised, cfg), strict=True):
        np.testing.assert_allclose(got, -expected, atol=1e-12)


@pytest.mark.parametrize("measure", list(DeviationMeasure))
def test_deviation_ignores_translation(measure: DeviationMeasure) -> None:
    v = np.random.default_rng(4).normal(size=20)
    for shift in (-50.0, 0.25, 1e3):
        assert deviation(v + shift, measure) == pytest.approx(deviation(v, measure), rel=1e-9)


def test_noise_term_is_minimal_when_noised_spread_equals_q() -> None:
    cfg = LossConfig(Q=2.0)
    clean = np.array([0.1, -0.1, 0.0, 0.2])
    z = np.random.default_rng(6).normal(size=16)
    z = (z - z.mean()) / z.std()
    scales = np.linspace(0.5, 4.0, 71)
    losses = np.array([group_loss(clean, s * z, cfg) for s in scales])
    best = scales[losses.argmin()]
    assert best == pytest.approx(2.0)
    assert losses.min() == pytest.approx(deviation(clean, DeviationMeasure.STD))
    assert np.all(np.diff(losses[scales <= 2.0]) < 0)
    assert np.all(np.diff(losses[scales >= 2.0]) > 0)


@pytest.mark.parametrize("norm", list(SpreaderNorm))
def test_single_row_noise_has_radius_norm(norm: SpreaderNorm) -> None:
    noise = sample_spreading_noise((1, 3), R=0.4, norm=norm, seed=2)
    assert row_norms(noise, norm)[0] == pytest.approx(0.4)


@pytest.mark.parametrize("norm", list(SpreaderNorm))
def test_one_dimensional_noise(norm: SpreaderNorm) -> None:
    noise = sample_spreading_noise((30, 1), R=1.5, norm=norm, seed=8)
    assert noise.shape == (30, 1)
    assert np.abs(noise).max() == pytest.approx(1.5)
