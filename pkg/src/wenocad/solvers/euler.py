"""Compressible Euler equations: state conversions, fluxes, wave speeds.

Conserved variables are (rho, rho u, E) in one dimension and
(rho, rho u, rho v, E) in two, with the ideal-gas closure
E = P / (gamma - 1) + rho |velocity|^2 / 2.  All functions are pointwise
and vectorized over leading axes; the component axis comes last.

Positivity of density and pressure is enforced where primitive variables
are recovered: a non-physical cell raises PositivityError rather than
letting NaNs spread through a run.
"""

from __future__ import annotations

import numpy as np

from ..errors import PositivityError

GAMMA_DEFAULT = 1.4


def _check_positive(rho, p, where):
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    bad = (rho <= 0.0) | (p <= 0.0) | ~np.isfinite(rho) | ~np.isfinite(p)
    if np.any(bad):
        idx = np.unravel_index(int(np.argmax(bad)), bad.shape)
        raise PositivityError(
            f"non-physical state at cell {tuple(int(k) for k in idx)} ({where}): "
            f"rho={float(rho[idx]):.3e}, P={float(p[idx]):.3e}",
            where=tuple(int(k) for k in idx),
        )


def prim_to_cons_1d(rho, u, p, gamma=GAMMA_DEFAULT):
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    e = p / (gamma - 1.0) + 0.5 * rho * u * u
    return np.stack((rho, rho * u, e), axis=-1)


def cons_to_prim_1d(q, gamma=GAMMA_DEFAULT, check=True, where="conversion"):
    q = np.asarray(q, dtype=float)
    rho = q[..., 0]
    u = q[..., 1] / rho
    p = (gamma - 1.0) * (q[..., 2] - 0.5 * rho * u * u)
    if check:
        _check_positive(rho, p, where)
    return rho, u, p


def euler_flux_1d(q, gamma=GAMMA_DEFAULT):
    rho, u, p = cons_to_prim_1d(q, gamma, check=False)
    return np.stack((q[..., 1], q[..., 1] * u + p, u * (q[..., 2] + p)), axis=-1)


def _check_density(rho, where):
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    bad = (rho <= 0.0) | ~np.isfinite(rho)
    if np.any(bad):
        idx = np.unravel_index(int(np.argmax(bad)), bad.shape)
        raise PositivityError(
            f"non-physical density at cell {tuple(int(k) for k in idx)} "
            f"({where}): rho={float(rho[idx]):.3e}",
            where=tuple(int(k) for k in idx),
        )


def _sound_speed(rho, p, gamma, where):
    """c with a transient pressure undershoot clamped to zero.

    Vacuum-adjacent stage states can dip to slightly negative pressure
    between Runge-Kutta stages; the flux itself stays finite there and
    the Lax-Friedrichs dissipation pulls the state back, so only the
    speed estimate needs guarding.  Non-positive density is a genuine
    breakdown and raises."""
    _check_density(rho, where)
    return np.sqrt(gamma * np.maximum(p, 0.0) / rho)


def max_wave_speed_1d(q, gamma=GAMMA_DEFAULT, where="wave speed"):
    """Global max |u| + c."""
    rho, u, p = cons_to_prim_1d(q, gamma, check=False)
    c = _sound_speed(rho, p, gamma, where)
    return float(np.max(np.abs(u) + c))


def prim_to_cons_2d(rho, u, v, p, gamma=GAMMA_DEFAULT):
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    p = np.asarray(p, dtype=float)
    e = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack((rho, rho * u, rho * v, e), axis=-1)


def cons_to_prim_2d(q, gamma=GAMMA_DEFAULT, check=True, where="conversion"):
    q = np.asarray(q, dtype=float)
    rho = q[..., 0]
    u = q[..., 1] / rho
    v = q[..., 2] / rho
    p = (gamma - 1.0) * (q[..., 3] - 0.5 * rho * (u * u + v * v))
    if check:
        _check_positive(rho, p, where)
    return rho, u, v, p


def euler_flux_2d_x(q, gamma=GAMMA_DEFAULT):
    rho, u, v, p = cons_to_prim_2d(q, gamma, check=False)
    mx = q[..., 1]
    return np.stack((mx, mx * u + p, mx * v, u * (q[..., 3] + p)), axis=-1)


def euler_flux_2d_y(q, gamma=GAMMA_DEFAULT):
    rho, u, v, p = cons_to_prim_2d(q, gamma, check=False)
    my = q[..., 2]
    return np.stack((my, my * u, my * v + p, v * (q[..., 3] + p)), axis=-1)


def max_wave_speed_2d(q, gamma=GAMMA_DEFAULT, where="wave speed"):
    """Directional global speeds (max |u| + c, max |v| + c)."""
    rho, u, v, p = cons_to_prim_2d(q, gamma, check=False)
    c = _sound_speed(rho, p, gamma, where)
    return float(np.max(np.abs(u) + c)), float(np.max(np.abs(v) + c))
