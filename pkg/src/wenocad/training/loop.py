"""Mini-batch training loop for the neural weighting function.

Everything downstream of the seed is deterministic: parameter
initialization and the per-epoch shuffles draw from one PCG64 stream, and
batches reduce in a fixed order, so two runs with the same configuration
produce bit-identical parameter trajectories.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import TrainingDivergedError
from ..network import backward_trace, forward_trace, init_params
from .dataset import generate_dataset
from .loss import Batch, total_loss, total_loss_and_gradient
from .optim import adamw_init, adamw_step

log = logging.getLogger(__name__)

# Prior-fit blend window, as a ratio of adjacent-difference magnitudes.
# Below PRIOR_RATIO_LO the prior keeps the linear weights; above
# PRIOR_RATIO_HI it fully selects the smoother substencil; in between it
# interpolates linearly in log ratio.
PRIOR_RATIO_LO = 5.0
PRIOR_RATIO_HI = 40.0


@dataclass
class Hyperparams:
    hyper_c: float
    hyper_d: float
    lr: float = 1e-4
    weight_decay: float = 0.01
    batch_size: int = 200
    epochs: int = 500
    seed: int = 0
    pretrain_epochs: int = 100
    pretrain_lr: float = 1e-3
    pretrain_batch: int = 400


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    l_cad: float
    l_sym: float
    l_ln: float
    total: float


def selection_prior(stencils):
    """Target weight pairs encoding the classical ENO selection principle.

    On resolved data the linear pair (1/3, 2/3) recovers the third-order
    upwind flux, so the prior keeps it wherever the two adjacent
    differences are comparable.  When one difference dominates by more
    than PRIOR_RATIO_HI the window is treated as discontinuous and all
    weight goes to the substencil avoiding the jump, the smoothest-
    substencil selection of Harten et al., J. Comput. Phys. 71 (1987).
    The transition is linear in the log of the difference ratio.
    """
    s = np.atleast_2d(np.asarray(stencils, dtype=float))
    d1 = np.abs(s[:, 1] - s[:, 0])
    d2 = np.abs(s[:, 2] - s[:, 1])
    hi = np.maximum(d1, d2)
    lo = np.minimum(d1, d2)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(lo > 0.0, hi / np.where(lo > 0.0, lo, 1.0), np.inf)
    ratio = np.where(hi == 0.0, 1.0, ratio)
    span = np.log(PRIOR_RATIO_HI) - np.log(PRIOR_RATIO_LO)
    with np.errstate(divide="ignore"):
        blend = np.clip((np.log(ratio) - np.log(PRIOR_RATIO_LO)) / span, 0.0, 1.0)
    w0_eno = np.where(d1 > d2, 0.0, 1.0)
    w0 = (1.0 - blend) / 3.0 + blend * w0_eno
    return np.stack([w0, 1.0 - w0], axis=1)


def _prior_fit_epoch(params, sub, targets, state, hyper, rng):
    """One least-squares epoch moving the network toward the prior."""
    n = sub.shape[0]
    bs = min(hyper.pretrain_batch, n)
    perm = rng.permutation(n)
    for b in range(n // bs):
        idx = perm[b * bs : (b + 1) * bs]
        trace = forward_trace(params, sub[idx])
        domega = 2.0 * (trace.omega - targets[idx]) / idx.size
        grads = backward_trace(params, trace, domega)
        adamw_step(params, grads, state, hyper.pretrain_lr, 0.0)


def train(hyper, dataset=None, log_every=0):
    """Train from scratch; returns (best parameters, per-epoch history).

    Training has two phases: a prior-fit phase of ``pretrain_epochs``
    epochs that moves the randomly initialized network onto the classical
    selection prior of :func:`selection_prior`, then ``epochs`` epochs of
    mini-batch descent on the full objective.  A cold-started network
    almost always descends into a minimum whose transition from linear to
    one-sided weights sits at difference ratios near one, over-dissipating
    marginally resolved smooth data, because the jump families dominate
    the early gradient; starting from the prior instead lands the main
    phase in the basin where smooth windows keep near-linear weights.

    The history holds one row per epoch of either phase, each evaluated
    on the whole dataset with the full objective, preceded by a row for
    the initial state, so ``history[0]`` is the loss of the untrained
    network.  The returned parameters are the checkpoint with the lowest
    full-dataset total loss during the main phase, with the
    hyperparameters, seed, and that loss recorded in the metadata.  A
    non-finite loss aborts with the global step index.
    """
    if dataset is None:
        dataset = generate_dataset(hyper.seed)
    rng = np.random.default_rng(hyper.seed)
    params = init_params(hyper.seed, hyper.hyper_c, hyper.hyper_d, rng=rng)

    full = Batch(dataset.stencils, dataset.labels)

    def full_stats(epoch):
        bd = total_loss(params, full, hyper.hyper_c, hyper.hyper_d)
        return EpochStats(epoch, bd.l_cad, bd.l_sym, bd.l_ln, bd.total)

    history = [full_stats(0)]

    if hyper.pretrain_epochs > 0:
        sub = np.concatenate(
            (dataset.stencils[:, 0:3], dataset.stencils[:, 1:4]), axis=0
        )
        sub = np.concatenate((sub, sub[:, ::-1]), axis=0)
        targets = selection_prior(sub)
        pre_state = adamw_init(params)
        for epoch in range(hyper.pretrain_epochs):
            _prior_fit_epoch(params, sub, targets, pre_state, hyper, rng)
            history.append(full_stats(epoch + 1))

    state = adamw_init(params)
    n = len(dataset)
    bs = hyper.batch_size
    n_batches = max(1, n // bs)
    best = None
    best_total = np.inf
    step = 0

    for epoch in range(hyper.epochs):
        perm = rng.permutation(n)
        for b in range(n_batches):
            idx = perm[b * bs : (b + 1) * bs]
            batch = Batch(dataset.stencils[idx], dataset.labels[idx])
            breakdown, grads = total_loss_and_gradient(
                params, batch, hyper.hyper_c, hyper.hyper_d
            )
            if not np.isfinite(breakdown.total):
                raise TrainingDivergedError(
                    f"loss became non-finite at step {step}", step=step
                )
            adamw_step(params, grads, state, hyper.lr, hyper.weight_decay)
            step += 1

        stats = full_stats(hyper.pretrain_epochs + epoch + 1)
        history.append(stats)
        if stats.total < best_total:
            best_total = stats.total
            best = params.copy()
        if log_every and (epoch + 1) % log_every == 0:
            log.info(
                "epoch %4d  l_cad %.6g  l_sym %.6g  l_ln %.6g  total %.6g",
                stats.epoch, stats.l_cad, stats.l_sym, stats.l_ln, stats.total,
            )

    best.training_loss = float(best_total)
    best.rng_seed = hyper.seed
    best.hyper_c = hyper.hyper_c
    best.hyper_d = hyper.hyper_d
    return best, history


def write_history(history, path):
    """Loss history as CSV with columns epoch,l_cad,l_sym,l_ln,total."""
    with open(path, "w") as fh:
        fh.write("epoch,l_cad,l_sym,l_ln,total\n")
        for s in history:
            fh.write(f"{s.epoch},{s.l_cad!r},{s.l_sym!r},{s.l_ln!r},{s.total!r}\n")


_CONFIG_KEYS = {
    "c": float,
    "d": float,
    "lr": float,
    "weight_decay": float,
    "batch_size": int,
    "epochs": int,
    "seed": int,
    "pretrain_epochs": int,
    "pretrain_lr": float,
    "pretrain_batch": int,
    "out": str,
    "history": str,
}


def read_train_config(path):
    """Parse a key = value training configuration file.

    Recognized keys: c, d (required loss coefficients), lr, weight_decay,
    batch_size, epochs, seed, pretrain_epochs, pretrain_lr,
    pretrain_batch, out (required weight-file path), history (loss CSV
    path).  '#' starts a comment.
    """
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            key = key.strip().lower()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_KEYS[key](val.strip())
    for req in ("c", "d", "out"):
        if req not in values:
            raise ValueError(f"{path}: missing required key {req!r}")

    hyper = Hyperparams(
        hyper_c=values["c"],
        hyper_d=values["d"],
        lr=values.get("lr", 1e-4),
        weight_decay=values.get("weight_decay", 0.01),
        batch_size=values.get("batch_size", 200),
        epochs=values.get("epochs", 500),
        seed=values.get("seed", 0),
        pretrain_epochs=values.get("pretrain_epochs", 100),
        pretrain_lr=values.get("pretrain_lr", 1e-3),
        pretrain_batch=values.get("pretrain_batch", 400),
    )
    return hyper, values["out"], values.get("history")
