"""Single-hidden-layer feedforward network for scalar regression: tanh hidden
units, linear output, exact full-batch gradients, momentum gradient descent
with best-on-validation early stopping."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import (
    BadDimensions,
    DimensionMismatch,
    DivergenceDetected,
    EmptyBatch,
    EmptyInput,
    LengthMismatch,
)
from .rng import SplitMix64

HIDDEN_ACTIVATION = "tanh"
OUTPUT_ACTIVATION = "identity"
NETWORK_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Network:
    hidden_weights: np.ndarray  # (H, m)
    hidden_biases: np.ndarray  # (H,)
    output_weights: np.ndarray  # (1, H)
    output_bias: np.ndarray  # (1,)

    def __post_init__(self):
        for name in ("hidden_weights", "hidden_biases", "output_weights", "output_bias"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=np.float64))
        h, m = self.hidden_weights.shape
        if self.hidden_biases.shape != (h,) or self.output_weights.shape != (1, h):
            raise DimensionMismatch("layer shapes are inconsistent")
        if self.output_bias.shape != (1,):
            raise DimensionMismatch("output bias must hold exactly one value")
        if not all(
            np.all(np.isfinite(p))
            for p in (self.hidden_weights, self.hidden_biases, self.output_weights, self.output_bias)
        ):
            raise ValueError("network parameters must be finite")

    @property
    def input_dim(self) -> int:
        return self.hidden_weights.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.hidden_weights.shape[0]


@dataclass(frozen=True)
class Gradient:
    hidden_weights: np.ndarray
    hidden_biases: np.ndarray
    output_weights: np.ndarray
    output_bias: np.ndarray

    @staticmethod
    def zeros_like(net: Network) -> "Gradient":
        return Gradient(
            np.zeros_like(net.hidden_weights),
            np.zeros_like(net.hidden_biases),
            np.zeros_like(net.output_weights),
            np.zeros_like(net.output_bias),
        )


def init_network(input_dim: int, hidden_dim: int, seed: int) -> Network:
    """Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer, biases
    zero.  Draw order is fixed (hidden weights row-major, then output weights)
    so a seed pins the network bitwise."""
    if input_dim < 1 or hidden_dim < 1:
        raise BadDimensions(f"dimensions must be positive, got m={input_dim}, H={hidden_dim}")
    rng = SplitMix64(seed)
    hidden_bound = 1.0 / math.sqrt(input_dim)
    output_bound = 1.0 / math.sqrt(hidden_dim)
    hw = rng.uniforms(hidden_dim * input_dim, -hidden_bound, hidden_bound).reshape(
        hidden_dim, input_dim
    )
    ow = rng.uniforms(hidden_dim, -output_bound, output_bound).reshape(1, hidden_dim)
    return Network(hw, np.zeros(hidden_dim), ow, np.zeros(1))


def forward_batch(net: Network, inputs: np.ndarray) -> np.ndarray:
    """Predictions for a (n, m) batch."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != net.input_dim:
        raise DimensionMismatch(f"batch shape {x.shape} incompatible with input_dim {net.input_dim}")
    hidden = np.tanh(x @ net.hidden_weights.T + net.hidden_biases)
    return hidden @ net.output_weights[0] + net.output_bias[0]


def forward(net: Network, inputs) -> float:
    """Prediction for a single length-m input."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.shape != (net.input_dim,):
        raise DimensionMismatch(f"input shape {x.shape} incompatible with input_dim {net.input_dim}")
    return float(forward_batch(net, x[None, :])[0])


def mse(predictions, targets) -> float:
    p = np.asarray(predictions, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.size == 0 or t.size == 0:
        raise EmptyInput("mse needs at least one value")
    if p.shape != t.shape:
        raise LengthMismatch(f"length {p.size} vs {t.size}")
    return float(np.mean((p - t) ** 2))


def backprop_gradient(net: Network, inputs, targets) -> Gradient:
    """Exact gradient of the batch MSE with respect to every parameter."""
    x = np.asarray(inputs, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise EmptyBatch("gradient needs a non-empty (n, m) batch")
    if x.shape[1] != net.input_dim or t.shape != (x.shape[0],):
        raise DimensionMismatch("batch shapes inconsistent with the network")
    n = x.shape[0]
    z = x @ net.hidden_weights.T + net.hidden_biases  # (n, H)
    h = np.tanh(z)
    pred = h @ net.output_weights[0] + net.output_bias[0]
    # d(MSE)/d(pred_i) = 2/n * (pred_i - t_i)
    dout = (2.0 / n) * (pred - t)  # (n,)
    g_ow = (dout @ h)[None, :]  # (1, H)
    g_ob = np.array([dout.sum()])
    dz = np.outer(dout, net.output_weights[0]) * (1.0 - h * h)  # (n, H)
    g_hw = dz.T @ x  # (H, m)
    g_hb = dz.sum(axis=0)
    return Gradient(g_hw, g_hb, g_ow, g_ob)


@dataclass(frozen=True)
class TrainState:
    network: Network
    epoch: int
    train_mse: float
    validation_mse: float
    learning_rate: float
    momentum: float
    velocity: Gradient


class TraceEntry(NamedTuple):
    epoch: int
    train_mse: float
    validation_mse: float


def gd_step(state: TrainState, grad: Gradient) -> TrainState:
    """One momentum update: v <- momentum*v - lr*g; theta <- theta + v."""
    net, vel = state.network, state.velocity
    if grad.hidden_weights.shape != net.hidden_weights.shape:
        raise DimensionMismatch("gradient shape does not match the network")
    new_vel = Gradient(
        state.momentum * vel.hidden_weights - state.learning_rate * grad.hidden_weights,
        state.momentum * vel.hidden_biases - state.learning_rate * grad.hidden_biases,
        state.momentum * vel.output_weights - state.learning_rate * grad.output_weights,
        state.momentum * vel.output_bias - state.learning_rate * grad.output_bias,
    )
    new_net = Network(
        net.hidden_weights + new_vel.hidden_weights,
        net.hidden_biases + new_vel.hidden_biases,
        net.output_weights + new_vel.output_weights,
        net.output_bias + new_vel.output_bias,
    )
    return replace(state, network=new_net, velocity=new_vel)


def train(
    net: Network,
    split,
    epochs: int = 5000,
    lr: float = 0.01,
    momentum: float = 0.9,
    patience: int | None = 200,
) -> tuple[TrainState, list[TraceEntry]]:
    """Full-batch gradient descent on the training pairs.

    Each epoch takes one step and then records (epoch, train MSE, validation
    MSE) at the new parameters.  Returns the state with the lowest validation
    MSE seen; training stops early after `patience` epochs without
    improvement (patience=None runs the full budget), or immediately once the
    training error hits exactly zero.

    Raises DivergenceDetected (carrying the partial trace) if the training
    error becomes non-finite.
    """
    if epochs < 1:
        raise ValueError("epochs must be at least 1")
    if lr <= 0.0:
        raise ValueError("learning rate must be positive")
    if not 0.0 <= momentum < 1.0:
        raise ValueError("momentum must lie in [0, 1)")
    state = TrainState(
        network=net,
        epoch=0,
        train_mse=math.inf,
        validation_mse=math.inf,
        learning_rate=lr,
        momentum=momentum,
        velocity=Gradient.zeros_like(net),
    )
    trace: list[TraceEntry] = []
    best: TrainState | None = None
    stale = 0
    for epoch in range(1, epochs + 1):
        # overflow here is not an error condition: it surfaces as a
        # non-finite training error and raises DivergenceDetected below
        with np.errstate(over="ignore", invalid="ignore"):
            grad = backprop_gradient(state.network, split.train.inputs, split.train.targets)
            if not all(
                np.all(np.isfinite(g))
                for g in (grad.hidden_weights, grad.hidden_biases, grad.output_weights, grad.output_bias)
            ):
                raise DivergenceDetected(
                    f"gradient became non-finite at epoch {epoch}", trace=trace
                )
            state = gd_step(state, grad)
            train_err = mse(
                forward_batch(state.network, split.train.inputs), split.train.targets
            )
            if not math.isfinite(train_err):
                raise DivergenceDetected(
                    f"training error became non-finite at epoch {epoch}", trace=trace
                )
            val_err = mse(
                forward_batch(state.network, split.validation.inputs), split.validation.targets
            )
        state = replace(state, epoch=epoch, train_mse=train_err, validation_mse=val_err)
        trace.append(TraceEntry(epoch, train_err, val_err))
        if best is None or val_err < best.validation_mse:
            best = state
            stale = 0
        else:
            stale += 1
            if patience is not None and stale >= patience:
                break
        if train_err == 0.0:
            break
    assert best is not None
    return best, trace


def network_to_dict(net: Network) -> dict:
    return {
        "format_version": NETWORK_FORMAT_VERSION,
        "input_dim": net.input_dim,
        "hidden_dim": net.hidden_dim,
        "hidden_activation": HIDDEN_ACTIVATION,
        "output_activation": OUTPUT_ACTIVATION,
        "hidden_weights": [[float(w) for w in row] for row in net.hidden_weights],
        "hidden_biases": [float(b) for b in net.hidden_biases],
        "output_weights": [[float(w) for w in row] for row in net.output_weights],
        "output_bias": [float(b) for b in net.output_bias],
    }


def network_from_dict(payload: dict) -> Network:
    """Rebuild a network from its serialized form.

    Declared dimensions that disagree with the stored arrays raise
    LengthMismatch (a corrupt artifact, not a configuration problem).
    """
    try:
        m = int(payload["input_dim"])
        h = int(payload["hidden_dim"])
        hw = np.asarray(payload["hidden_weights"], dtype=np.float64)
        hb = np.asarray(payload["hidden_biases"], dtype=np.float64)
        ow = np.asarray(payload["output_weights"], dtype=np.float64)
        ob = np.asarray(payload["output_bias"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise LengthMismatch(f"network payload malformed: {exc}") from None
    if payload.get("hidden_activation") != HIDDEN_ACTIVATION or (
        payload.get("output_activation") != OUTPUT_ACTIVATION
    ):
        raise LengthMismatch("unsupported activation names in network payload")
    if hw.shape != (h, m) or hb.shape != (h,) or ow.shape != (1, h) or ob.shape != (1,):
        raise LengthMismatch(
            f"stored arrays {hw.shape}/{hb.shape}/{ow.shape}/{ob.shape} disagree with "
            f"declared dims m={m}, H={h}"
        )
    return Network(hw, hb, ow, ob)
