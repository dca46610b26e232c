"""The neural weighting function: a small dense network in plain numpy.

Architecture: the clamped normalized-difference features of a three-point
stencil (4 inputs) pass through two GELU hidden layers of 16 units into a
softmax pair, which is used directly as the convex reconstruction weights
(w0, w1).  Feeding differences rather than raw values makes the weights
invariant under adding a constant to the stencil, and (away from the
clamps) under rescaling it.

Parameters are stored as a versioned JSON file together with the training
metadata, written with shortest round-trip floats so save/load reproduces
every entry bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .errors import (
    NetworkEvalError,
    ParamsDimensionError,
    ParamsFormatError,
    ParamsVersionError,
)
from .weights import WeightPair, modified_delta_array

FORMAT_VERSION = 1
LAYER_SIZES = (4, 16, 16, 2)

_SQRT2 = np.sqrt(2.0)
_INV_SQRT2PI = 1.0 / np.sqrt(2.0 * np.pi)


def gelu(x):
    """Exact Gaussian error linear unit, x * Phi(x) with the erf form."""
    x = np.asarray(x, dtype=float)
    return 0.5 * x * (1.0 + erf(x / _SQRT2))


def gelu_prime(x):
    """d/dx gelu(x) = Phi(x) + x phi(x)."""
    x = np.asarray(x, dtype=float)
    return 0.5 * (1.0 + erf(x / _SQRT2)) + x * _INV_SQRT2PI * np.exp(-0.5 * x * x)


def softmax(z):
    """Row-wise softmax with max subtraction along the last axis."""
    z = np.asarray(z, dtype=float)
    shifted = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=-1, keepdims=True)


@dataclass
class NetworkParams:
    """Dense-layer parameters plus provenance metadata.

    Weight matrices map inputs on the right: z = x @ w.T + b.
    """

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    w3: np.ndarray
    b3: np.ndarray
    hyper_c: float = 0.0
    hyper_d: float = 0.0
    rng_seed: int | None = None
    training_loss: float | None = None
    format_version: int = FORMAT_VERSION

    _SHAPES = {
        "w1": (16, 4),
        "b1": (16,),
        "w2": (16, 16),
        "b2": (16,),
        "w3": (2, 16),
        "b3": (2,),
    }

    def __post_init__(self):
        for name, shape in self._SHAPES.items():
            a = np.asarray(getattr(self, name), dtype=float)
            if a.shape != shape:
                raise ParamsDimensionError(
                    f"layer {name} must have shape {shape}, got {a.shape}"
                )
            setattr(self, name, a)

    def arrays(self):
        return [self.w1, self.b1, self.w2, self.b2, self.w3, self.b3]

    def copy(self):
        return NetworkParams(
            *(a.copy() for a in self.arrays()),
            hyper_c=self.hyper_c,
            hyper_d=self.hyper_d,
            rng_seed=self.rng_seed,
            training_loss=self.training_loss,
            format_version=self.format_version,
        )


def init_params(seed, hyper_c=0.0, hyper_d=0.0, rng=None):
    """Uniform [-1/sqrt(fan_in), 1/sqrt(fan_in)] weights, zero biases."""
    if rng is None:
        rng = np.random.default_rng(seed)
    mats = []
    for fan_out, fan_in in ((16, 4), (16, 16), (2, 16)):
        bound = 1.0 / np.sqrt(fan_in)
        mats.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        mats.append(np.zeros(fan_out))
    return NetworkParams(
        *mats, hyper_c=hyper_c, hyper_d=hyper_d, rng_seed=seed
    )


@dataclass
class ForwardTrace:
    """Intermediate values of a batched forward pass, kept for backprop."""

    features: np.ndarray
    z1: np.ndarray
    a1: np.ndarray
    z2: np.ndarray
    a2: np.ndarray
    z3: np.ndarray
    omega: np.ndarray


def forward_trace(params, stencils):
    """Evaluate the network on stencils (..., 3), returning all layers.

    Raises NetworkEvalError naming the first layer whose output is not
    finite; with finite parameters that cannot happen, so it signals
    corrupted weights.
    """
    s = np.asarray(stencils, dtype=float)
    feats = modified_delta_array(s)
    flat = feats.reshape(-1, 4)

    z1 = flat @ params.w1.T + params.b1
    a1 = gelu(z1)
    z2 = a1 @ params.w2.T + params.b2
    a2 = gelu(z2)
    z3 = a2 @ params.w3.T + params.b3
    omega = softmax(z3)
    for name, a in (("hidden layer 1", a1), ("hidden layer 2", a2),
                    ("output layer", omega)):
        if not np.all(np.isfinite(a)):
            raise NetworkEvalError(f"{name} produced non-finite values")

    lead = feats.shape[:-1]
    return ForwardTrace(
        features=flat,
        z1=z1, a1=a1, z2=z2, a2=a2, z3=z3,
        omega=omega.reshape(lead + (2,)),
    )


def forward_array(params, stencils):
    """Network weights for stencils (..., 3) -> (..., 2)."""
    return forward_trace(params, stencils).omega


def forward(params, s):
    """Scalar entry point: one three-point stencil to a WeightPair."""
    if hasattr(s, "as_array"):
        s = s.as_array()
    w = forward_array(params, np.asarray(s, dtype=float).reshape(3))
    return WeightPair(float(w[0]), float(w[1]))


def backward_trace(params, trace, domega):
    """Accumulate parameter gradients from d(loss)/d(omega).

    `trace` is the ForwardTrace of the same batch; `domega` has the shape
    of trace.omega.  The feature layer has no parameters, so backprop
    stops at the first dense layer.  Returns gradients in the order of
    NetworkParams.arrays().
    """
    omega = trace.omega.reshape(-1, 2)
    dom = np.asarray(domega, dtype=float).reshape(-1, 2)
    # softmax jacobian: dz = w * (dw - <dw, w>)
    dz3 = omega * (dom - np.sum(dom * omega, axis=-1, keepdims=True))
    dw3 = dz3.T @ trace.a2
    db3 = dz3.sum(axis=0)
    da2 = dz3 @ params.w3
    dz2 = da2 * gelu_prime(trace.z2)
    dw2 = dz2.T @ trace.a1
    db2 = dz2.sum(axis=0)
    da1 = dz2 @ params.w2
    dz1 = da1 * gelu_prime(trace.z1)
    dw1 = dz1.T @ trace.features
    db1 = dz1.sum(axis=0)
    return [dw1, db1, dw2, db2, dw3, db3]


# ---------------------------------------------------------------------------
# parameter files


def save_params(params, path):
    """Write parameters and metadata as versioned JSON.

    json emits shortest round-trip representations (17 significant digits
    at most), so loading reproduces the arrays exactly.
    """
    payload = {
        "format_version": params.format_version,
        "metadata": {
            "hyper_c": params.hyper_c,
            "hyper_d": params.hyper_d,
            "rng_seed": params.rng_seed,
            "training_loss": params.training_loss,
        },
        "layers": {
            name: np.asarray(getattr(params, name)).tolist()
            for name in NetworkParams._SHAPES
        },
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_params(path):
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParamsFormatError(f"{path}: not valid JSON ({exc})") from exc

    if not isinstance(payload, dict) or "format_version" not in payload:
        raise ParamsFormatError(f"{path}: missing format_version")
    version = payload["format_version"]
    if version != FORMAT_VERSION:
        raise ParamsVersionError(
            f"{path}: format version {version!r} not supported "
            f"(expected {FORMAT_VERSION})"
        )
    layers = payload.get("layers")
    if not isinstance(layers, dict):
        raise ParamsFormatError(f"{path}: missing layers table")

    arrays = {}
    for name, shape in NetworkParams._SHAPES.items():
        if name not in layers:
            raise ParamsFormatError(f"{path}: missing layer {name}")
        a = np.asarray(layers[name], dtype=float)
        if a.shape != shape:
            raise ParamsDimensionError(
                f"{path}: layer {name} has shape {a.shape}, expected {shape}"
            )
        if not np.all(np.isfinite(a)):
            raise ParamsFormatError(f"{path}: layer {name} has non-finite entries")
        arrays[name] = a

    meta = payload.get("metadata", {})
    return NetworkParams(
        arrays["w1"], arrays["b1"], arrays["w2"], arrays["b2"],
        arrays["w3"], arrays["b3"],
        hyper_c=meta.get("hyper_c", 0.0),
        hyper_d=meta.get("hyper_d", 0.0),
        rng_seed=meta.get("rng_seed"),
        training_loss=meta.get("training_loss"),
        format_version=version,
    )
