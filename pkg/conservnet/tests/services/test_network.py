import math

import numpy as np
import pytest

from conservnet.core.exceptions import (
    ArgumentError,
    DimensionError,
    TrainingDivergenceError,
)
from conservnet.models import DeviationMeasure, LossConfig, LossVariant
from conservnet.services.loss import group_loss, group_loss_grad
from conservnet.services.network import (
    Gradients,
    MlpParams,
    adam_step,
    backward,
    forward,
    init_params,
    mish,
    mish_grad,
    predict,
    zero_params,
)


def test_mish_reference_values() -> None:
    assert mish(0.0) == 0.0
    assert mish(50.0) == pytest.approx(50.0)
    assert mish(1.0) == pytest.approx(math.tanh(math.log1p(math.e)), rel=1e-15)
    assert np.all(np.isfinite(mish(np.array([-1e3, -30.0, 30.0, 1e3]))))


def test_mish_grad_matches_finite_difference() -> None:
    x = np.linspace(-25.0, 25.0, 101)
    h = 1e-6
    numeric = (mish(x + h) - mish(x - h)) / (2 * h)
    np.testing.assert_allclose(mish_grad(x), numeric, rtol=1e-6, atol=1e-8)


def test_init_params_shapes_and_bounds() -> None:
    params = init_params([4, 320, 320, 320, 320, 1], seed=0)
    assert params.dims == [4, 320, 320, 320, 320, 1]
    assert params.step_count == 0
    assert np.abs(params.weights[0]).max() <= 1 / math.sqrt(4)
    assert np.abs(params.weights[1]).max() <= 1 / math.sqrt(320)
    assert all(np.all(b == 0) for b in params.biases)


def test_init_params_rejects_bad_dims() -> None:
    with pytest.raises(ArgumentError):
        init_params([3, 5, 2], seed=0)
    with pytest.raises(ArgumentError):
        init_params([3], seed=0)


def test_params_validate_chain() -> None:
    with pytest.raises(DimensionError):
        MlpParams.from_layers(
            [np.zeros((3, 4)), np.zeros((5, 1))], [np.zeros(4), np.zeros(1)]
        )


def test_forward_shape_and_tape(tiny_params: MlpParams) -> None:
    batch = np.random.default_rng(0).normal(size=(7, 3))
    outputs, tape = forward(tiny_params, batch)
    assert outputs.shape == (7,)
    assert tape.depth == tiny_params.n_layers
    # replaying the tape's last layer reproduces the output
    w, b = tiny_params.weights[-1], tiny_params.biases[-1]
    np.testing.assert_array_equal((tape.inputs[-1] @ w + b)[:, 0], outputs)


def test_forward_rejects_wrong_width(tiny_params: MlpParams) -> None:
    with pytest.raises(DimensionError):
        forward(tiny_params, np.zeros((5, 4)))


def test_zero_params_output_constant() -> None:
    params = zero_params([3, 4, 1])
    np.testing.assert_array_equal(predict(params, np.ones((6, 3))), np.zeros(6))


def _flat_loss(params: MlpParams, x: np.ndarray, noise: np.ndarray, cfg: LossConfig) -> float:
    return group_loss(predict(params, x), predict(params, x + noise), cfg)


def _replace(params: MlpParams, which: str, layer: int, array: np.ndarray) -> MlpParams:
    weights = list(params.weights)
    biases = list(params.biases)
    (weights if which == "w" else biases)[layer] = array
    return MlpParams.from_layers(weights, biases)


@pytest.mark.parametrize("variant", list(LossVariant))
@pytest.mark.parametrize("measure", list(DeviationMeasure))
def test_gradients_match_central_differences(
    variant: LossVariant, measure: DeviationMeasure
) -> None:
    cfg = LossConfig(variant=variant, deviation=measure, Q=5.0)
    rng = np.random.default_rng(17)
    for trial in range(20):
        params = init_params([3, 5, 4, 1], seed=trial)
        x = rng.normal(size=(9, 3))
        noise = rng.uniform(-0.5, 0.5, size=(9, 3))

        clean_out, clean_tape = forward(params, x)
        noised_out, noised_tape = forward(params, x + noise)
        g_clean, g_noised = group_loss_grad(clean_out, noised_out, cfg)
        grads = backward(params, clean_tape, g_clean) + backward(
            params, noised_tape, g_noised
        )

        h = 1e-6
        analytic: list[float] = []
        numeric: list[float] = []
        for which, arrays, grad_arrays in (
            ("w", params.weights, grads.weights),
            ("b", params.biases, grads.biases),
        ):
            for layer, (array, grad) in enumerate(zip(arrays, grad_arrays, strict=True)):
                for index in np.ndindex(array.shape):
                    up, down = array.copy(), array.copy()
                    up[index] += h
                    down[index] -= h
                    plus = _flat_loss(_replace(params, which, layer, up), x, noise, cfg)
                    minus = _flat_loss(_replace(params, which, layer, down), x, noise, cfg)
                    numeric.append((plus - minus) / (2 * h))
                    analytic.append(float(grad[index]))

        a, n = np.asarray(analytic), np.asarray(numeric)
        assert np.linalg.norm(a - n) / max(np.linalg.norm(a + n), 1e-12) < 1e-4


def test_adam_step_updates_and_counts(tiny_params: MlpParams) -> None:
    grads = Gradients(
        weights=tuple(np.ones_like(w) for w in tiny_params.weights),
        biases=tuple(np.ones_like(b) for b in tiny_params.biases),
    )
    updated = adam_step(tiny_params, grads, lr=0.01)
    assert updated.step_count == 1
    # first bias-corrected Adam step moves every parameter by lr against the sign
    np.testing.assert_allclose(
        updated.weights[0], tiny_params.weights[0] - 0.01, rtol=0, atol=1e-8
    )
    assert tiny_params.step_count == 0


def test_adam_step_with_zero_gradients_keeps_params(tiny_params: MlpParams) -> None:
    grads = Gradients.zeros_like(tiny_params.weights, tiny_params.biases)
    updated = adam_step(tiny_params, grads, lr=0.01)
    for before, after in zip(tiny_params.weights, updated.weights, strict=True):
        np.testing.assert_array_equal(before, after)


def test_adam_step_rejects_non_finite(tiny_params: MlpParams) -> None:
    grads = Gradients.zeros_like(tiny_params.weights, tiny_params.biases)
    grads.weights[0][0, 0] = np.nan
    with pytest.raises(TrainingDivergenceError):
        adam_step(tiny_params, grads, lr=0.01)
    with pytest.raises(ArgumentError):
        adam_step(tiny_params, Gradients.zeros_like(tiny_params.weights, tiny_params.biases), lr=0)


def test_mish_values_match_scalar_reference() -> None:
    xs = np.linspace(-40.0, 40.0, 161)
    reference = [x * math.tanh(math.log1p(math.exp(x))) for x in xs]
    np.testing.assert_allclose(mish(xs), reference, rtol=1e-12, atol=0)


def test_init_params_fan_in_statistics() -> None:
    params = init_params([4, 320, 320, 320, 320, 1], seed=0)
    for w in params.weights:
        bound = 1 / math.sqrt(w.shape[0])
        assert np.abs(w).max() <= bound
        # U(-b, b) has standard deviation b / sqrt(3)
        standard_error = bound / math.sqrt(3 * w.size)
        assert abs(w.mean()) <= 4 * standard_error
    for w in params.weights[1:-1]:
        assert np.abs(w).max() > 0.99 / math.sqrt(320)


def test_backward_is_linear_over_rows(tiny_params: MlpParams) -> None:
    rng = np.random.default_rng(8)
    x = rng.normal(size=(5, 3))
    g = rng.normal(size=5)

    _, single_tape = forward(tiny_params, x[:1])
    single = backward(tiny_params, single_tape, g[:1])
    _, doubled_tape = forward(tiny_params, np.vstack([x[:1], x[:1]]))
    doubled = backward(tiny_params, doubled_tape, np.array([g[0], g[0]]))
    for got, expected in zip(doubled.arrays(), single.arrays(), strict=True):
        np.testing.assert_allclose(got, 2 * expected, rtol=1e-12, atol=1e-15)

    _, full_tape = forward(tiny_params, x)
    _, rest_tape = forward(tiny_params, x[1:])
    split = single + backward(tiny_params, rest_tape, g[1:])
    full = backward(tiny_params, full_tape, g)
    for got, expected in zip(full.arrays(), split.arrays(), strict=True):
        np.testing.assert_allclose(got, expected, rtol=1e-12, atol=1e-15)


def _scalar_adam(p: float, g: float, steps: int, lr: float) -> float:
    b1, b2, eps = 0.9, 0.999, 1e-8
    m = v = 0.0
    for t in range(1, steps + 1):
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        p -= lr * (m / (1 - b1**t)) / (math.sqrt(v / (1 - b2**t)) + eps)
    return p


def test_two_adam_steps_match_scalar_oracle() -> None:
    params = MlpParams.from_layers([np.array([[0.3]])], [np.array([-0.2])])
    grads = Gradients(weights=(np.array([[0.7]]),), biases=(np.array([-1.3]),))
    for _ in range(2):
        params = adam_step(params, grads, lr=0.05)
    assert params.step_count == 2
    assert params.weights[0][0, 0] == pytest.approx(_scalar_adam(0.3, 0.7, 2, 0.05), abs=1e-12)
    assert params.biases[0][0] == pytest.approx(_scalar_adam(-0.2, -1.3, 2, 0.05), abs=1e-12)
