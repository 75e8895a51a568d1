"""Training loop: one full-group batch per Adam step with fresh spreading noise."""

from collections.abc import Callable, Sequence

import logfire
import numpy as np

from conservnet.core.exceptions import ArgumentError, TrainingDivergenceError
from conservnet.core.seeding import make_rng
from conservnet.models import (
    FloatArray,
    GroupedDataset,
    LossConfig,
    LossVariant,
    Monitored,
    Snapshot,
    StopReason,
    TrainConfig,
    TrainReport,
)
from conservnet.services.evaluation import rho_or_none, sigma_bar, split_by_group
from conservnet.services.loss import group_loss, group_loss_grad, sample_spreading_noise
from conservnet.services.network import (
    Gradients,
    MlpParams,
    adam_step,
    backward,
    forward,
    predict,
)

SnapshotCallback = Callable[[Snapshot], None]


def early_stop_check(
    history: Sequence[float], patience: int, min_delta: float
) -> bool:
    """True once `patience` snapshots in a row failed to improve the best by min_delta."""
    if not history:
        raise ArgumentError("early_stop_check needs a non-empty history")
    best = history[0]
    waited = 0
    for value in history[1:]:
        if best - value >= min_delta:
            best = value
            waited = 0
        else:
            waited += 1
            if waited >= patience:
                return True
    return False


def _group_step(
    params: MlpParams,
    states: FloatArray,
    noise: FloatArray,
    loss_cfg: LossConfig,
) -> tuple[float, Gradients]:
    clean_out, clean_tape = forward(params, states)
    noised_out, noised_tape = forward(params, states + noise)
    loss = group_loss(clean_out, noised_out, loss_cfg)
    grad_clean, grad_noised = group_loss_grad(clean_out, noised_out, loss_cfg)
    grads = backward(params, clean_tape, grad_clean)
    if loss_cfg.variant is LossVariant.NOISE_VARIANCE:
        grads = grads + backward(params, noised_tape, grad_noised)
    return loss, grads


def dataset_loss(
    params: MlpParams,
    dataset: GroupedDataset,
    loss_cfg: LossConfig,
    rng: np.random.Generator,
) -> float:
    """Summed group loss without updating anything."""
    total = 0.0
    for group in dataset.groups:
        noise = sample_spreading_noise(
            group.states.shape,
            loss_cfg.R,
            loss_cfg.spreader_norm,
            rng,
            loss_cfg.noise_mode,
        )
        clean = predict(params, group.states)
        noised = predict(params, group.states + noise)
        total += group_loss(clean, noised, loss_cfg)
    return total


def _metrics(params: MlpParams, dataset: GroupedDataset) -> tuple[float | None, float]:
    outputs = predict(params, dataset.stacked_states())
    spread = sigma_bar(split_by_group(outputs, dataset))
    return rho_or_none(outputs, dataset.invariant_per_row()), spread


def train(
    train_data: GroupedDataset,
    test_data: GroupedDataset | None,
    model: MlpParams,
    cfg: TrainConfig,
    on_snapshot: SnapshotCallback | None = None,
) -> tuple[MlpParams, TrainReport]:
    if model.input_dim != train_data.dim:
        raise ArgumentError(
            f"Model expects {model.input_dim} inputs, dataset has {train_data.dim}"
        )
    if test_data is not None and test_data.dim != train_data.dim:
        raise ArgumentError(
            f"Test data has {test_data.dim} variables, train data {train_data.dim}"
        )
    if train_data.n_groups == 0:
        raise ArgumentError("Training data has no groups")

    monitored = cfg.early_stop.monitored or (
        Monitored.TEST_LOSS if test_data is not None else Monitored.TRAIN_LOSS
    )
    if monitored is Monitored.TEST_LOSS and test_data is None:
        raise ArgumentError("test_loss is monitored but no test data was given")

    order_rng = make_rng(cfg.seed, "group_order")
    noise_rng = make_rng(cfg.seed, "spreading_noise")
    test_rng = make_rng(cfg.seed, "test_noise")
    loss_cfg = cfg.loss

    snapshots: list[Snapshot] = []
    history: list[float] = []
    stop_reason = StopReason.EPOCH_LIMIT
    params = model
    epoch = 0

    with logfire.span(
        "train on {dataset}",
        dataset=train_data.name,
        epochs=cfg.epochs,
        lr=cfg.lr,
        variant=loss_cfg.variant.value,
        seed=cfg.seed,
    ):
        for epoch in range(cfg.epochs):
            train_loss = 0.0
            for index in order_rng.permutation(train_data.n_groups):
                states = train_data.groups[index].states
                noise = sample_spreading_noise(
                    states.shape,
                    loss_cfg.R,
                    loss_cfg.spreader_norm,
                    noise_rng,
                    loss_cfg.noise_mode,
                )
                loss, grads = _group_step(params, states, noise, loss_cfg)
                if not np.isfinite(loss):
                    raise TrainingDivergenceError(epoch=epoch, detail="non-finite loss")
                try:
                    params = adam_step(
                        params,
                        grads,
                        cfg.lr,
                        cfg.beta1,
                        cfg.beta2,
                        cfg.eps,
                    )
                except TrainingDivergenceError as exc:
                    raise TrainingDivergenceError(epoch, "non-finite gradient") from exc
                train_loss += loss

            last = epoch == cfg.epochs - 1
            if epoch % cfg.eval_every and not last:
                continue

            test_loss = rho_test = sigma_test = None
            if test_data is not None:
                test_loss = dataset_loss(params, test_data, loss_cfg, test_rng)
                rho_test, sigma_test = _metrics(params, test_data)
            rho_train, sigma_train = _metrics(params, train_data)
            snapshot = Snapshot(
                epoch=epoch,
                train_loss=train_loss,
                test_loss=test_loss,
                rho_train=rho_train,
                rho_test=rho_test,
                sigma_bar_train=sigma_train,
                sigma_bar_test=sigma_test,
            )
            snapshots.append(snapshot)
            logfire.info("Snapshot", **snapshot.model_dump())
            if on_snapshot is not None:
                on_snapshot(snapshot)

            history.append(
                snapshot.test_loss
                if monitored is Monitored.TEST_LOSS and snapshot.test_loss is not None
                else snapshot.train_loss
            )
            if cfg.early_stop.enabled and early_stop_check(
                history, cfg.early_stop.patience, cfg.early_stop.min_delta
            ):
                stop_reason = StopReason.EARLY_STOP
                logfire.info("Early stop at epoch {epoch}", epoch=epoch)
                break

    report = TrainReport(
        snapshots=snapshots,
        stop_reason=stop_reason,
        stopped_epoch=epoch,
        monitored=monitored,
        early_stop=cfg.early_stop,
    )
    return params, report
