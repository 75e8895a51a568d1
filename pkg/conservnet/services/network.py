"""Dense feed-forward network with Mish hidden layers and a linear output.

Everything here is a pure function over explicit state: parameters, Adam
moments and the step counter travel together in ``MlpParams`` and every update
returns a new instance.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import expit

from conservnet.core.exceptions import (
    ArgumentError,
    DimensionError,
    TrainingDivergenceError,
)
from conservnet.models import FloatArray

SOFTPLUS_THRESHOLD = 20.0


@dataclass(frozen=True, slots=True)
class Gradients:
    """Per-layer arrays shaped like the weights and biases they belong to."""

    weights: tuple[FloatArray, ...]
    biases: tuple[FloatArray, ...]

    @classmethod
    def zeros_like(
        cls, weights: Sequence[FloatArray], biases: Sequence[FloatArray]
    ) -> "Gradients":
        return cls(
            weights=tuple(np.zeros_like(w) for w in weights),
            biases=tuple(np.zeros_like(b) for b in biases),
        )

    def __add__(self, other: "Gradients") -> "Gradients":
        return Gradients(
            weights=tuple(a + b for a, b in zip(self.weights, other.weights, strict=True)),
            biases=tuple(a + b for a, b in zip(self.biases, other.biases, strict=True)),
        )

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(g)) for g in (*self.weights, *self.biases))

    def arrays(self) -> tuple[FloatArray, ...]:
        return (*self.weights, *self.biases)


@dataclass(frozen=True, slots=True)
class MlpParams:
    weights: tuple[FloatArray, ...]
    biases: tuple[FloatArray, ...]
    adam_m: Gradients
    adam_v: Gradients
    step_count: int = 0
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.weights or len(self.weights) != len(self.biases):
            raise DimensionError(expected=len(self.weights), got=len(self.biases))
        for i, (w, b) in enumerate(zip(self.weights, self.biases, strict=True)):
            if w.ndim != 2 or b.shape != (w.shape[1],):
                raise DimensionError(expected=(w.shape[1],), got=tuple(b.shape))
            if i and self.weights[i - 1].shape[1] != w.shape[0]:
                raise DimensionError(
                    expected=self.weights[i - 1].shape[1], got=w.shape[0]
                )
        if self.weights[-1].shape[1] != 1:
            raise DimensionError(expected=1, got=self.weights[-1].shape[1])
        for moments in (self.adam_m, self.adam_v):
            shapes = [a.shape for a in moments.arrays()]
            if shapes != [a.shape for a in (*self.weights, *self.biases)]:
                raise DimensionError(
                    expected=tuple(len(s) for s in shapes), got=len(shapes)
                )
        if self.step_count < 0:
            raise ArgumentError(f"step_count must be non-negative, got {self.step_count}")

    @classmethod
    def from_layers(
        cls,
        weights: Sequence[FloatArray],
        biases: Sequence[FloatArray],
        seed: int | None = None,
    ) -> "MlpParams":
        weights = tuple(np.asarray(w, dtype=np.float64) for w in weights)
        biases = tuple(np.asarray(b, dtype=np.float64) for b in biases)
        return cls(
            weights=weights,
            biases=biases,
            adam_m=Gradients.zeros_like(weights, biases),
            adam_v=Gradients.zeros_like(weights, biases),
            seed=seed,
        )

    @property
    def dims(self) -> list[int]:
        return [self.weights[0].shape[0], *(w.shape[1] for w in self.weights)]

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    @property
    def input_dim(self) -> int:
        return int(self.weights[0].shape[0])


@dataclass(frozen=True, slots=True)
class ForwardTape:
    # inputs[l] feeds layer l, pre_activations[l] = inputs[l] @ W_l + b_l
    inputs: tuple[FloatArray, ...]
    pre_activations: tuple[FloatArray, ...]

    @property
    def depth(self) -> int:
        return len(self.pre_activations)

    @property
    def outputs(self) -> FloatArray:
        return self.pre_activations[-1][:, 0]


def softplus(x: ArrayLike) -> FloatArray:
    x = np.asarray(x, dtype=np.float64)
    # above the threshold log(1 + e^x) equals x to double precision
    return np.where(
        x > SOFTPLUS_THRESHOLD,
        x,
        np.log1p(np.exp(np.minimum(x, SOFTPLUS_THRESHOLD))),
    )


def mish(x: ArrayLike) -> FloatArray:
    x = np.asarray(x, dtype=np.float64)
    return x * np.tanh(softplus(x))


def mish_grad(x: ArrayLike) -> FloatArray:
    x = np.asarray(x, dtype=np.float64)
    t = np.tanh(softplus(x))
    # d softplus / dx = sigmoid(x)
    return t + x * (1.0 - t * t) * expit(x)


def _check_dims(dims: Sequence[int]) -> list[int]:
    dims = list(dims)
    if len(dims) < 2:
        raise ArgumentError(f"Layer sizes need at least input and output, got {dims}")
    if any(size < 1 for size in dims):
        raise ArgumentError(f"Layer sizes must be positive, got {dims}")
    if dims[-1] != 1:
        raise ArgumentError(f"The network has a single output neuron, got {dims[-1]}")
    return dims


def init_params(dims: Sequence[int], seed: int) -> MlpParams:
    """Fan-in scaled uniform weights U(-1/sqrt(fan_in), 1/sqrt(fan_in)), zero biases."""
    dims = _check_dims(dims)
    rng = np.random.default_rng(seed)
    weights: list[FloatArray] = []
    biases: list[FloatArray] = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpParams.from_layers(weights, biases, seed=seed)


def zero_params(dims: Sequence[int]) -> MlpParams:
    dims = _check_dims(dims)
    weights = [np.zeros((i, o)) for i, o in zip(dims[:-1], dims[1:])]
    biases = [np.zeros(o) for o in dims[1:]]
    return MlpParams.from_layers(weights, biases)


def forward(params: MlpParams, batch: ArrayLike) -> tuple[FloatArray, ForwardTape]:
    x = np.asarray(batch, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != params.input_dim:
        raise DimensionError(expected=params.input_dim, got=tuple(x.shape))

    inputs: list[FloatArray] = []
    pre_activations: list[FloatArray] = []
    a = x
    last = params.n_layers - 1
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        inputs.append(a)
        z = a @ w + b
        pre_activations.append(z)
        if i < last:
            a = mish(z)

    tape = ForwardTape(inputs=tuple(inputs), pre_activations=tuple(pre_activations))
    return tape.outputs, tape


def predict(params: MlpParams, batch: ArrayLike) -> FloatArray:
    return forward(params, batch)[0]


def backward(
    params: MlpParams, tape: ForwardTape, output_grad: ArrayLike
) -> Gradients:
    """Reverse-mode gradients of a loss given dL/dF for every row of the batch."""
    grad_out = np.asarray(output_grad, dtype=np.float64)
    if tape.depth != params.n_layers:
        raise DimensionError(expected=params.n_layers, got=tape.depth)
    for a, w in zip(tape.inputs, params.weights, strict=True):
        if a.shape[1] != w.shape[0]:
            raise DimensionError(expected=w.shape[0], got=a.shape[1])
    batch_size = tape.inputs[0].shape[0]
    if grad_out.shape != (batch_size,):
        raise DimensionError(expected=(batch_size,), got=tuple(grad_out.shape))

    grad_w: list[FloatArray] = [np.empty(0)] * params.n_layers
    grad_b: list[FloatArray] = [np.empty(0)] * params.n_layers
    delta = grad_out[:, None]
    for i in range(params.n_layers - 1, -1, -1):
        grad_w[i] = tape.inputs[i].T @ delta
        grad_b[i] = delta.sum(axis=0)
        if i:
            delta = (delta @ params.weights[i].T) * mish_grad(tape.pre_activations[i - 1])
    return Gradients(weights=tuple(grad_w), biases=tuple(grad_b))


def adam_step(
    params: MlpParams,
    grads: Gradients,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> MlpParams:
    if lr <= 0:
        raise ArgumentError(f"Learning rate must be positive, got {lr}")
    if not grads.is_finite():
        raise TrainingDivergenceError(detail="non-finite gradient")

    t = params.step_count + 1
    correction1 = 1.0 - beta1**t
    correction2 = 1.0 - beta2**t

    def update(
        values: tuple[FloatArray, ...],
        g: tuple[FloatArray, ...],
        m: tuple[FloatArray, ...],
        v: tuple[FloatArray, ...],
    ) -> tuple[tuple[FloatArray, ...], tuple[FloatArray, ...], tuple[FloatArray, ...]]:
        new_values: list[FloatArray] = []
        new_m: list[FloatArray] = []
        new_v: list[FloatArray] = []
        for p, gi, mi, vi in zip(values, g, m, v, strict=True):
            mi = beta1 * mi + (1.0 - beta1) * gi
            vi = beta2 * vi + (1.0 - beta2) * (gi * gi)
            m_hat = mi / correction1
            v_hat = vi / correction2
            new_values.append(p - lr * m_hat / (np.sqrt(v_hat) + eps))
            new_m.append(mi)
            new_v.append(vi)
        return tuple(new_values), tuple(new_m), tuple(new_v)

    weights, m_w, v_w = update(
        params.weights, grads.weights, params.adam_m.weights, params.adam_v.weights
    )
    biases, m_b, v_b = update(
        params.biases, grads.biases, params.adam_m.biases, params.adam_v.biases
    )
    return MlpParams(
        weights=weights,
        biases=biases,
        adam_m=Gradients(weights=m_w, biases=m_b),
        adam_v=Gradients(weights=v_w, biases=v_b),
        step_count=t,
        seed=params.seed,
    )
