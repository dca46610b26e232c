"""Synthetic four-point stencils with exact conservative-derivative labels.

Functions are sampled on [-1, 1] with spacing 0.01 and cut into four-point
windows (v_{i-2}, v_{i-1}, v_i, v_{i+1}).  A smooth window is labeled with
the analytic derivative at its third point; with probability one half the
window is stored mirrored, which is the same as sampling the reflected
function and labels the reversed traversal with the opposite sign.

Four families make up the set:

    cubic polynomials   sum a_k x^k,  a_k ~ U[-1, 1]          3920 samples
    waves               tanh(b x) and sin(b pi x), b ~ U[2, 20] 7880 samples
    steps               c0 (x <= 0) + c1 (x > 0), c ~ U[-10, 10] 8000 samples
    ramps with a jump   +-x + d (x > 0), d ~ U[0.5, 2.5]        4000 samples

Each discontinuous function contributes exactly one window, the one whose
middle pair straddles the jump; its label is the divided difference
(v_R - v_L) / dx of the two values bordering the jump, which the exact
single-sided reconstruction reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DX = 0.01
DOMAIN = (-1.0, 1.0)

FAMILY_NAMES = ("cubic", "wave", "step", "ramp")
FAMILY_COUNTS = (3920, 7880, 8000, 4000)
WINDOWS_PER_SMOOTH_FN = 10

KIND_SMOOTH = 0
KIND_JUMP = 1

# centered so the point x = 0 is exact and the step families split cleanly
_HALF = round(DOMAIN[1] / DX)
_GRID = DX * np.arange(-_HALF, _HALF + 1)
_JUMP_WINDOW = slice(_HALF - 1, _HALF + 3)  # grid points (-0.01, 0, 0.01, 0.02)


def smooth_label(fprime, x, mirrored=False):
    """Analytic derivative at the labeled point.

    The forward window is labeled at its third point; a mirrored window is
    labeled at the forward window's second point, and because mirroring
    reverses the traversal direction the derivative flips sign.
    """
    d = float(fprime(x))
    return -d if mirrored else d


def jump_label(stencil4, dx=DX):
    """(v_R - v_L) / dx across the jump between the middle pair."""
    s = np.asarray(stencil4, dtype=float)
    return float((s[2] - s[1]) / dx)


@dataclass(frozen=True)
class Sample:
    stencil4: np.ndarray
    label: float
    kind: str  # "smooth" or "jump"


@dataclass
class Dataset:
    stencils: np.ndarray   # (n, 4)
    labels: np.ndarray     # (n,)
    kinds: np.ndarray      # (n,) KIND_SMOOTH / KIND_JUMP
    families: np.ndarray   # (n,) index into FAMILY_NAMES
    seed: int

    def __len__(self):
        return self.stencils.shape[0]

    def counts(self):
        return tuple(int(np.sum(self.families == k)) for k in range(len(FAMILY_NAMES)))

    def sample(self, i):
        kind = "smooth" if self.kinds[i] == KIND_SMOOTH else "jump"
        return Sample(self.stencils[i].copy(), float(self.labels[i]), kind)


def _smooth_windows(rng, values, fprime, n_windows, out_sten, out_lab, pos):
    # third-point index ranges over the interior of the sampled grid
    idx = rng.choice(np.arange(2, _GRID.size - 1), size=n_windows, replace=False)
    for i in idx:
        window = values[i - 2 : i + 2]
        if rng.integers(2):
            out_sten[pos] = window[::-1]
            out_lab[pos] = smooth_label(fprime, _GRID[i - 1], mirrored=True)
        else:
            out_sten[pos] = window
            out_lab[pos] = smooth_label(fprime, _GRID[i], mirrored=False)
        pos += 1
    return pos


def generate_dataset(seed=0):
    rng = np.random.default_rng(seed)
    total = sum(FAMILY_COUNTS)
    stencils = np.empty((total, 4))
    labels = np.empty(total)
    kinds = np.empty(total, dtype=np.uint8)
    families = np.empty(total, dtype=np.uint8)

    pos = 0

    n_cubic = FAMILY_COUNTS[0]
    kinds[pos : pos + n_cubic] = KIND_SMOOTH
    families[pos : pos + n_cubic] = 0
    for _ in range(n_cubic // WINDOWS_PER_SMOOTH_FN):
        a = rng.uniform(-1.0, 1.0, size=4)
        values = a[0] + a[1] * _GRID + a[2] * _GRID**2 + a[3] * _GRID**3
        fprime = lambda x: a[1] + 2.0 * a[2] * x + 3.0 * a[3] * x * x
        pos = _smooth_windows(rng, values, fprime, WINDOWS_PER_SMOOTH_FN,
                              stencils, labels, pos)

    n_wave = FAMILY_COUNTS[1]
    kinds[pos : pos + n_wave] = KIND_SMOOTH
    families[pos : pos + n_wave] = 1
    for k in range(n_wave // WINDOWS_PER_SMOOTH_FN):
        b = rng.uniform(2.0, 20.0)
        if k % 2 == 0:
            values = np.tanh(b * _GRID)
            fprime = lambda x: b / np.cosh(b * x) ** 2
        else:
            values = np.sin(b * np.pi * _GRID)
            fprime = lambda x: b * np.pi * np.cos(b * np.pi * x)
        pos = _smooth_windows(rng, values, fprime, WINDOWS_PER_SMOOTH_FN,
                              stencils, labels, pos)

    n_step = FAMILY_COUNTS[2]
    kinds[pos : pos + n_step] = KIND_JUMP
    families[pos : pos + n_step] = 2
    for _ in range(n_step):
        c0, c1 = rng.uniform(-10.0, 10.0, size=2)
        window = np.where(_GRID[_JUMP_WINDOW] > 0.0, c1, c0)
        if rng.integers(2):
            window = window[::-1]
        stencils[pos] = window
        labels[pos] = jump_label(window)
        pos += 1

    n_ramp = FAMILY_COUNTS[3]
    kinds[pos : pos + n_ramp] = KIND_JUMP
    families[pos : pos + n_ramp] = 3
    for _ in range(n_ramp):
        slope = 1.0 if rng.integers(2) else -1.0
        d = rng.uniform(0.5, 2.5)
        x = _GRID[_JUMP_WINDOW]
        window = slope * x + d * (x > 0.0)
        if rng.integers(2):
            window = window[::-1]
        stencils[pos] = window
        labels[pos] = jump_label(window)
        pos += 1

    assert pos == total
    return Dataset(stencils, labels, kinds, families, seed)
