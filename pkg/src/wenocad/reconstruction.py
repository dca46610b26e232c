"""Finite-difference WENO reconstruction of interface fluxes.

The semi-discrete scheme writes du_i/dt = -(h_{i+1/2} - h_{i-1/2}) / dx
with numerical fluxes h built from a global Lax-Friedrichs splitting
f = f+ + f-, f+- = (f(u) +- alpha u) / 2, alpha = max |f'(u)|.  The
positive part is reconstructed at x_{i+1/2} from the upwind-biased window
ending at i+1; the negative part uses the mirror image of that window, so
a single weighting function serves both characteristic directions.

Third order blends the two candidate interface values

    h0 = -f_{i-1}/2 + 3 f_i / 2,      h1 = f_i/2 + f_{i+1}/2

with convex weights; fifth order blends the three classical candidate
polynomials of Jiang and Shu, JCP 126, 202-228 (1996).  Weighting
strategies are small objects exposing the stencil width and a vectorized
`weights` kernel, so the classical smoothness-indicator weights and the
neural weighting function plug into the same sweep.
"""

from __future__ import annotations

import numpy as np

from . import network, weights as wt
from .errors import DimensionError

GHOST3 = 2
GHOST5 = 3


def lax_friedrichs_split(f, u, alpha):
    """Split pointwise fluxes into f+- = (f +- alpha u) / 2."""
    f = np.asarray(f, dtype=float)
    u = np.asarray(u, dtype=float)
    return 0.5 * (f + alpha * u), 0.5 * (f - alpha * u)


def candidate_fluxes3(s):
    """The two candidate interface values of windows (..., 3)."""
    s = np.asarray(s, dtype=float)
    h0 = -0.5 * s[..., 0] + 1.5 * s[..., 1]
    h1 = 0.5 * s[..., 1] + 0.5 * s[..., 2]
    return h0, h1


def candidate_fluxes5(s):
    """The three candidate interface values of windows (..., 5)."""
    s = np.asarray(s, dtype=float)
    f0, f1, f2, f3, f4 = (s[..., k] for k in range(5))
    q0 = (2.0 * f0 - 7.0 * f1 + 11.0 * f2) / 6.0
    q1 = (-f1 + 5.0 * f2 + 2.0 * f3) / 6.0
    q2 = (2.0 * f2 + 5.0 * f3 - f4) / 6.0
    return q0, q1, q2


# ---------------------------------------------------------------------------
# weighting strategies


class Weno3JS:
    name = "weno3-js"
    stencil_width = 3

    def weights(self, s):
        return wt.js_weights_array(s)


class Weno3Z:
    name = "weno3-z"
    stencil_width = 3

    def weights(self, s):
        return wt.z_weights_array(s)


class Linear3:
    """Fixed optimal weights; third order everywhere, for diagnostics."""

    name = "weno3-linear"
    stencil_width = 3

    def weights(self, s):
        s = np.asarray(s, dtype=float)
        out = np.empty(s.shape[:-1] + (2,))
        out[..., 0], out[..., 1] = wt.LINEAR3
        return out


class NeuralWeighting3:
    """Weights from a trained network; `label` distinguishes variants."""

    stencil_width = 3

    def __init__(self, params, label="weno3-cadnn"):
        self.params = params
        self.name = label

    def weights(self, s):
        return network.forward_array(self.params, s)


class Weno5JS:
    name = "weno5-js"
    stencil_width = 5

    def weights(self, s):
        return wt.js5_weights_array(s)


class Weno5M:
    name = "weno5-m"
    stencil_width = 5

    def weights(self, s):
        return wt.m5_weights_array(s)


class Linear5:
    name = "weno5-linear"
    stencil_width = 5

    def weights(self, s):
        s = np.asarray(s, dtype=float)
        out = np.empty(s.shape[:-1] + (3,))
        for k in range(3):
            out[..., k] = wt.LINEAR5[k]
        return out


def ghost_width(strategy):
    return GHOST3 if strategy.stencil_width == 3 else GHOST5


# ---------------------------------------------------------------------------
# vectorized sweeps


def _windows(a, offsets, m):
    """Stack m-long slices of `a` (sweep axis first) at the given offsets."""
    return np.stack([a[k : k + m] for k in offsets], axis=-1)


def interface_fluxes(fp, fm, strategy):
    """Reconstruct h_{i+1/2} = h+ + h- at every resolvable interface.

    `fp` and `fm` are split fluxes with the sweep axis first and ghost
    layers included; with g ghost cells per side the result covers the
    n_phys + 1 interfaces bordering physical cells.
    """
    fp = np.asarray(fp, dtype=float)
    fm = np.asarray(fm, dtype=float)
    n_tot = fp.shape[0]
    g = ghost_width(strategy)
    m = n_tot - 2 * g + 1  # number of interfaces
    if m < 2:
        raise DimensionError(
            f"row of {n_tot} values is too short for a width-"
            f"{strategy.stencil_width} reconstruction"
        )

    if strategy.stencil_width == 3:
        # plus part at i+1/2 from (f+_{i-1}, f+_i, f+_{i+1});
        # minus part from the reversed window (f-_{i+2}, f-_{i+1}, f-_i)
        sp = _windows(fp, (g - 2, g - 1, g), m)
        sm = _windows(fm, (g + 1, g, g - 1), m)
        wp = strategy.weights(sp)
        wm = strategy.weights(sm)
        p0, p1 = candidate_fluxes3(sp)
        m0, m1 = candidate_fluxes3(sm)
        hp = wp[..., 0] * p0 + wp[..., 1] * p1
        hm = wm[..., 0] * m0 + wm[..., 1] * m1
    else:
        sp = _windows(fp, (g - 3, g - 2, g - 1, g, g + 1), m)
        sm = _windows(fm, (g + 2, g + 1, g, g - 1, g - 2), m)
        wp = strategy.weights(sp)
        wm = strategy.weights(sm)
        p = candidate_fluxes5(sp)
        q = candidate_fluxes5(sm)
        hp = sum(wp[..., k] * p[k] for k in range(3))
        hm = sum(wm[..., k] * q[k] for k in range(3))
    return hp + hm


def flux_difference(fp, fm, strategy, dx):
    """(h_{i+1/2} - h_{i-1/2}) / dx on the physical cells of a padded row."""
    h = interface_fluxes(fp, fm, strategy)
    return (h[1:] - h[:-1]) / dx


def weno_derivative_row(u_row, flux_fn, alpha, strategy, dx, n_ghost=None):
    """Conservative flux-difference approximation of d f(u) / dx.

    `u_row` carries its own ghost values (sweep axis first); the result
    covers the interior cells only.  `n_ghost`, when given, is validated
    against the width the strategy needs.
    """
    u = np.asarray(u_row, dtype=float)
    g = ghost_width(strategy)
    if n_ghost is not None and n_ghost < g:
        raise DimensionError(
            f"{n_ghost} ghost cells per side, but a width-"
            f"{strategy.stencil_width} reconstruction needs {g}"
        )
    f = np.asarray(flux_fn(u), dtype=float)
    fp, fm = lax_friedrichs_split(f, u, alpha)
    return flux_difference(fp, fm, strategy, dx)
