"""Mini-batch training loop: Adam on MSE with best-validation checkpointing.

One epoch = a seeded shuffle of the training samples, mini-batches of 64
(final partial batch kept), a train-mode forward/backward/update per
batch, then an inference-mode evaluation of train and validation MSE. The
parameters with the lowest validation loss seen so far are checkpointed;
there is no early stopping, training always runs the full epoch budget.

Randomness: weight init, shuffling, and dropout each draw from their own
named substream of ``TrainConfig.seed`` (see :mod:`loadcast.seeding`), so
a seed fully determines the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .neural_core import (
    NetworkParams,
    NetworkSpec,
    backward,
    copy_params,
    forward,
    init_params,
    iter_param_blocks,
)
from .seeding import substream


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer and loop settings; defaults are the reference configuration."""

    epochs: int = 100
    batch_size: int = 64
    learning_rate: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1; got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1; got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0; got {self.learning_rate}")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValueError("beta1 and beta2 must be in [0, 1)")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0; got {self.epsilon}")


def mse_loss(predictions: np.ndarray, targets: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean squared error and its gradient w.r.t. the predictions."""
    predictions = np.asarray(predictions, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if predictions.shape != targets.shape:
        raise ValueError(
            f"prediction shape {predictions.shape} != target shape {targets.shape}"
        )
    if predictions.size == 0:
        raise ValueError("cannot compute a loss on zero samples")
    diff = predictions - targets
    loss = float(np.mean(diff**2))
    return loss, (2.0 / diff.size) * diff


class Adam:
    """Adam with bias correction; state is keyed by parameter block name."""

    def __init__(self, config: TrainConfig):
        self.config = config
        self.step_count = 0
        self._m: dict[str, np.ndarray] = {}
        self._v: dict[str, np.ndarray] = {}

    def step(self, params: NetworkParams, grads: NetworkParams) -> None:
        """Update ``params`` in place from one batch's gradients."""
        cfg = self.config
        self.step_count += 1
        t = self.step_count
        correction1 = 1.0 - cfg.beta1**t
        correction2 = 1.0 - cfg.beta2**t
        for (name, p_arr), (_, g_arr) in zip(
            iter_param_blocks(params), iter_param_blocks(grads)
        ):
            m = self._m.setdefault(name, np.zeros_like(p_arr))
            v = self._v.setdefault(name, np.zeros_like(p_arr))
            m *= cfg.beta1
            m += (1.0 - cfg.beta1) * g_arr
            v *= cfg.beta2
            v += (1.0 - cfg.beta2) * g_arr**2
            m_hat = m / correction1
            v_hat = v / correction2
            p_arr -= cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)


@dataclass
class TrainHistory:
    """Per-epoch inference-mode losses; epochs are 1-based."""

    epoch: list[int] = field(default_factory=list)
    train_loss: list[float] = field(default_factory=list)
    train_rmse: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    val_rmse: list[float] = field(default_factory=list)

    def append(self, epoch: int, train_loss: float, val_loss: float) -> None:
        self.epoch.append(epoch)
        self.train_loss.append(train_loss)
        self.train_rmse.append(float(np.sqrt(train_loss)))
        self.val_loss.append(val_loss)
        self.val_rmse.append(float(np.sqrt(val_loss)))

    def to_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("epoch,train_loss,train_rmse,val_loss,val_rmse\n")
            for row in zip(
                self.epoch, self.train_loss, self.train_rmse, self.val_loss, self.val_rmse
            ):
                handle.write(f"{row[0]},{row[1]!r},{row[2]!r},{row[3]!r},{row[4]!r}\n")

    @classmethod
    def from_csv(cls, path: str) -> "TrainHistory":
        history = cls()
        with open(path, encoding="utf-8") as handle:
            header = handle.readline().strip()
            if header != "epoch,train_loss,train_rmse,val_loss,val_rmse":
                raise ValueError(f"unexpected history header {header!r}")
            for line in handle:
                cells = line.strip().split(",")
                history.epoch.append(int(cells[0]))
                history.train_loss.append(float(cells[1]))
                history.train_rmse.append(float(cells[2]))
                history.val_loss.append(float(cells[3]))
                history.val_rmse.append(float(cells[4]))
        return history


@dataclass
class TrainResult:
    """Outcome of :func:`train`: checkpointed best parameters plus the trail."""

    spec: NetworkSpec
    params: NetworkParams          # checkpoint with the lowest validation loss
    final_params: NetworkParams    # parameters after the last epoch
    best_epoch: int
    best_val_loss: float
    history: TrainHistory


def predict(spec: NetworkSpec, params: NetworkParams, x: np.ndarray) -> np.ndarray:
    """Inference-mode predictions, shape (n, 1), for windows ``x`` (n, window, input)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 2:
        x = x[np.newaxis]
    predictions, _ = forward(spec, params, x)
    return predictions


def train(
    spec: NetworkSpec,
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_val: np.ndarray,
    y_val: np.ndarray,
    config: TrainConfig = TrainConfig(),
    *,
    initial_params: NetworkParams | None = None,
) -> TrainResult:
    """Run the full training loop; see the module docstring for the recipe."""
    x_train = np.asarray(x_train, dtype=np.float64)
    y_train = np.asarray(y_train, dtype=np.float64)
    x_val = np.asarray(x_val, dtype=np.float64)
    y_val = np.asarray(y_val, dtype=np.float64)
    if len(x_train) == 0 or len(x_val) == 0:
        raise ValueError("training and validation splits must both be non-empty")
    if len(x_train) != len(y_train) or len(x_val) != len(y_val):
        raise ValueError("sample/target counts differ")

    rng_init = substream(config.seed, "init")
    rng_shuffle = substream(config.seed, "shuffle")
    rng_dropout = substream(config.seed, "dropout")
    params = initial_params if initial_params is not None else init_params(spec, rng_init)
    optimizer = Adam(config)
    history = TrainHistory()
    best_params = copy_params(params)
    best_epoch = 0
    best_val = np.inf

    n = len(x_train)
    for epoch in range(1, config.epochs + 1):
        order = rng_shuffle.permutation(n)
        for start in range(0, n, config.batch_size):
            batch_idx = order[start : start + config.batch_size]
            xb, yb = x_train[batch_idx], y_train[batch_idx]
            predictions, caches = forward(
                spec, params, xb, train=True, dropout_rng=rng_dropout
            )
            _, d_pred = mse_loss(predictions, yb)
            grads = backward(spec, params, caches, d_pred)
            optimizer.step(params, grads)
        train_loss, _ = mse_loss(predict(spec, params, x_train), y_train)
        val_loss, _ = mse_loss(predict(spec, params, x_val), y_val)
        history.append(epoch, train_loss, val_loss)
        if val_loss < best_val:
            best_val = val_loss
            best_epoch = epoch
            best_params = copy_params(params)

    return TrainResult(
        spec=spec,
        params=best_params,
        final_params=params,
        best_epoch=best_epoch,
        best_val_loss=float(best_val),
        history=history,
    )
