"""Training objective for the neural weighting function.

A batch of N four-point stencils decomposes into 2N overlapping
three-point substencils, one per interface of the conservative derivative

    Dv_i = (v_{i+1/2} - v_{i-1/2}) / dx,

each interface value blending the two candidate reconstructions with the
network's weights.  Three terms make up the objective:

    l_cad  mean squared derivative error over the N samples;
    l_sym  softly ties the weights of every reversed substencil to the
           transformation the reversal induces on the original weights,
           measured between logarithms over the 2N substencils;
    l_ln   pulls log(2 w0) - log(w1) to zero (the optimal linear weights)
           with a per-stencil factor that fades to zero near jumps.

    total = l_cad + C * l_sym + D * l_ln

Both sums over substencils are normalized by N, not 2N.  Gradients flow
through both branches of the symmetry term.  All passes are batched
numpy; the backward pass reuses the forward traces, so one gradient
evaluation costs two forward passes (original and reversed substencils)
plus the dense-layer transposes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .. import network
from ..reconstruction import candidate_fluxes3
from ..weights import gauge_array
from .dataset import DX


class Batch(NamedTuple):
    stencils: np.ndarray  # (n, 4)
    labels: np.ndarray    # (n,)


@dataclass(frozen=True)
class LossBreakdown:
    l_cad: float
    l_sym: float
    l_ln: float
    total: float


def _as_batch(batch):
    if isinstance(batch, Batch):
        s, y = batch.stencils, batch.labels
    else:
        s, y = batch
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    if s.ndim == 1:
        s = s[None, :]
        y = np.atleast_1d(y)
    return Batch(s, y)


def _substencils(stencils):
    """All 2N interface substencils: left interfaces first, then right."""
    return np.concatenate((stencils[:, 0:3], stencils[:, 1:4]), axis=0)


def predict_derivative(params, stencil4, dx=DX):
    """Conservative derivative approximation for stencils (..., 4)."""
    s = np.asarray(stencil4, dtype=float)
    squeeze = s.ndim == 1
    s = s.reshape(-1, 4)
    sub = _substencils(s)
    w = network.forward_array(params, sub)
    h0, h1 = candidate_fluxes3(sub)
    h = w[..., 0] * h0 + w[..., 1] * h1
    n = s.shape[0]
    out = (h[n:] - h[:n]) / dx
    return float(out[0]) if squeeze else out


def _flip_map(w):
    """Weights the reversal symmetry demands, and the map's jacobian."""
    q = 4.0 * w[..., 0] + w[..., 1]
    target = np.stack((w[..., 1] / q, 4.0 * w[..., 0] / q), axis=-1)
    return q, target


def _evaluate(params, batch, hyper_c, hyper_d, want_grad):
    stencils, labels = _as_batch(batch)
    n = stencils.shape[0]
    sub = _substencils(stencils)
    flipped = sub[:, ::-1]

    tr = network.forward_trace(params, sub)
    trf = network.forward_trace(params, flipped)
    w = tr.omega
    wf = trf.omega

    # conservative-derivative term
    h0, h1 = candidate_fluxes3(sub)
    h = w[:, 0] * h0 + w[:, 1] * h1
    resid = (h[n:] - h[:n]) / DX - labels
    l_cad = float(np.mean(resid**2))

    # reversal-symmetry term, logs of both weight pairs
    q, target = _flip_map(w)
    g = np.log(wf) - np.log(target)
    l_sym = float(np.sum(g * g) / n)

    # linear-weight term, gauged by local smoothness
    lam = gauge_array(sub)
    tln = np.log(2.0 * w[:, 0]) - np.log(w[:, 1])
    l_ln = float(np.sum(lam * tln * tln) / n)

    for name, val in (("l_cad", l_cad), ("l_sym", l_sym), ("l_ln", l_ln)):
        if not np.isfinite(val):
            raise FloatingPointError(f"{name} is non-finite")

    total = l_cad + hyper_c * l_sym + hyper_d * l_ln
    breakdown = LossBreakdown(l_cad, l_sym, l_ln, total)
    if not want_grad:
        return breakdown, None

    # d l_cad / d w
    dresid = 2.0 * resid / n
    dh = np.concatenate((-dresid, dresid)) / DX
    dw = np.stack((dh * h0, dh * h1), axis=-1)

    # d l_sym / d w through the transformation branch ...
    dtarget = (-2.0 / n) * g / target
    q2 = q * q
    dw_sym0 = dtarget[:, 0] * (-4.0 * w[:, 1] / q2) + dtarget[:, 1] * (4.0 * w[:, 1] / q2)
    dw_sym1 = dtarget[:, 0] * (4.0 * w[:, 0] / q2) + dtarget[:, 1] * (-4.0 * w[:, 0] / q2)
    dw_sym = np.stack((dw_sym0, dw_sym1), axis=-1)
    # ... and through the reversed-stencil branch
    dwf = (2.0 / n) * g / wf

    # d l_ln / d w
    coeff = (2.0 / n) * lam * tln
    dw_ln = np.stack((coeff / w[:, 0], -coeff / w[:, 1]), axis=-1)

    for name, val in (("l_cad", dw), ("l_sym", dw_sym), ("l_sym", dwf),
                      ("l_ln", dw_ln)):
        if not np.all(np.isfinite(val)):
            raise FloatingPointError(f"gradient of {name} is non-finite")

    dw_total = dw + hyper_c * dw_sym + hyper_d * dw_ln
    grads = network.backward_trace(params, tr, dw_total)
    grads_f = network.backward_trace(params, trf, hyper_c * dwf)
    grads = [a + b for a, b in zip(grads, grads_f)]
    return breakdown, grads


def loss_cad(params, batch):
    return _evaluate(params, batch, 0.0, 0.0, False)[0].l_cad


def loss_sym(params, batch):
    return _evaluate(params, batch, 0.0, 0.0, False)[0].l_sym


def loss_ln(params, batch):
    return _evaluate(params, batch, 0.0, 0.0, False)[0].l_ln


def total_loss(params, batch, hyper_c, hyper_d):
    return _evaluate(params, batch, hyper_c, hyper_d, False)[0]


def gradient(params, batch, hyper_c, hyper_d):
    return _evaluate(params, batch, hyper_c, hyper_d, True)[1]


def total_loss_and_gradient(params, batch, hyper_c, hyper_d):
    return _evaluate(params, batch, hyper_c, hyper_d, True)
