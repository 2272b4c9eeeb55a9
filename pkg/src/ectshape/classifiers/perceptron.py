"""Single-hidden-layer perceptron trained by per-example SGD with momentum.

Features are min-max scaled to [0, 1] with ranges remembered from the
training set; hidden and output layers both use the logistic sigmoid;
targets are one-hot and the loss is squared error. Weight init and the
per-epoch example order come from one seeded generator, so training is
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset
from ..errors import DimensionMismatchError, EmptyClassError, NonFiniteLossError
from ..rng import SplitMix64

_INIT_HALF_RANGE = 0.5


@dataclass(frozen=True)
class MlpParams:
    hidden: int | None = None  # None: ceil((d + K) / 2)
    lr: float = 0.3
    momentum: float = 0.2
    epochs: int = 500
    seed: int = 0

    def resolve_hidden(self, d: int, k: int) -> int:
        return self.hidden if self.hidden is not None else math.ceil((d + k) / 2)


@dataclass(frozen=True)
class MlpModel:
    w1: np.ndarray  # (h, d)
    b1: np.ndarray  # (h,)
    w2: np.ndarray  # (K, h)
    b2: np.ndarray  # (K,)
    scaler_min: np.ndarray  # (d,)
    scaler_max: np.ndarray  # (d,)

    def __post_init__(self) -> None:
        for arr in (self.w1, self.b1, self.w2, self.b2):
            if not np.isfinite(arr).all():
                raise ValueError("parameters must be finite")
        if self.w1.shape[0] < 1:
            raise ValueError("need at least one hidden unit")

    @property
    def n_features(self) -> int:
        return int(self.w1.shape[1])

    @property
    def num_classes(self) -> int:
        return int(self.w2.shape[0])


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def scale_features(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Min-max scale with the stored training ranges; no clamping.

    Constant training features map to 0.
    """
    span = model.scaler_max - model.scaler_min
    scaled = np.zeros_like(x, dtype=np.float64)
    nonconst = span > 0
    scaled[nonconst] = (x[nonconst] - model.scaler_min[nonconst]) / span[nonconst]
    return scaled


def forward(
    w1: np.ndarray, b1: np.ndarray, w2: np.ndarray, b2: np.ndarray, x: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Hidden activations and outputs for one already-scaled example."""
    hidden = _sigmoid(w1 @ x + b1)
    output = _sigmoid(w2 @ hidden + b2)
    return hidden, output


def example_loss_and_gradients(
    w1: np.ndarray,
    b1: np.ndarray,
    w2: np.ndarray,
    b2: np.ndarray,
    x: np.ndarray,
    target: np.ndarray,
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Squared-error loss 0.5*sum((out-target)^2) and its exact gradients."""
    hidden, output = forward(w1, b1, w2, b2, x)
    err = output - target
    loss = 0.5 * float(err @ err)
    delta_out = err * output * (1.0 - output)
    grad_w2 = np.outer(delta_out, hidden)
    grad_b2 = delta_out
    delta_hidden = (w2.T @ delta_out) * hidden * (1.0 - hidden)
    grad_w1 = np.outer(delta_hidden, x)
    grad_b1 = delta_hidden
    return loss, grad_w1, grad_b1, grad_w2, grad_b2


def train_mlp(data: LabeledDataset, params: MlpParams = MlpParams()) -> MlpModel:
    """Train with per-example SGD and momentum; deterministic given seed.

    Raises NonFiniteLossError if the epoch loss diverges to NaN/inf.
    """
    counts = data.class_counts()
    for c in range(data.num_classes):
        if counts[c] == 0:
            raise EmptyClassError(c)
    n, d = data.features.shape
    k = data.num_classes
    h = params.resolve_hidden(d, k)

    scaler_min = data.features.min(axis=0)
    scaler_max = data.features.max(axis=0)
    span = scaler_max - scaler_min
    scaled = np.zeros_like(data.features)
    nonconst = span > 0
    scaled[:, nonconst] = (
        data.features[:, nonconst] - scaler_min[nonconst]
    ) / span[nonconst]

    targets = np.zeros((n, k))
    targets[np.arange(n), data.labels] = 1.0

    rng = SplitMix64(params.seed)

    def init(shape: tuple[int, ...]) -> np.ndarray:
        flat = np.array(
            [
                rng.uniform_in(-_INIT_HALF_RANGE, _INIT_HALF_RANGE)
                for _ in range(int(np.prod(shape)))
            ]
        )
        return flat.reshape(shape)

    w1 = init((h, d))
    b1 = init((h,))
    w2 = init((k, h))
    b2 = init((k,))
    v_w1 = np.zeros_like(w1)
    v_b1 = np.zeros_like(b1)
    v_w2 = np.zeros_like(w2)
    v_b2 = np.zeros_like(b2)

    order = list(range(n))
    for _ in range(params.epochs):
        rng.shuffle(order)
        epoch_loss = 0.0
        for i in order:
            loss, g_w1, g_b1, g_w2, g_b2 = example_loss_and_gradients(
                w1, b1, w2, b2, scaled[i], targets[i]
            )
            epoch_loss += loss
            v_w1 = params.momentum * v_w1 - params.lr * g_w1
            v_b1 = params.momentum * v_b1 - params.lr * g_b1
            v_w2 = params.momentum * v_w2 - params.lr * g_w2
            v_b2 = params.momentum * v_b2 - params.lr * g_b2
            w1 = w1 + v_w1
            b1 = b1 + v_b1
            w2 = w2 + v_w2
            b2 = b2 + v_b2
        if not math.isfinite(epoch_loss):
            raise NonFiniteLossError(f"training diverged (epoch loss {epoch_loss})")

    return MlpModel(
        w1=w1, b1=b1, w2=w2, b2=b2, scaler_min=scaler_min, scaler_max=scaler_max
    )


def mlp_posterior(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Forward pass on scaled features, outputs normalized to sum 1."""
    if x.shape != (model.n_features,):
        raise DimensionMismatchError(
            f"expected {model.n_features} features, got {x.shape}"
        )
    _, output = forward(model.w1, model.b1, model.w2, model.b2, scale_features(model, x))
    total = output.sum()
    if total <= 0.0 or not math.isfinite(total):
        return np.full(model.num_classes, 1.0 / model.num_classes)
    return output / total
