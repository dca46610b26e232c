"""Exact solution of the Riemann problem for the 1D Euler equations.

The star-region pressure is the root of the standard pressure function,
found with a Newton iteration kept inside a sign-change bracket; the
self-similar solution is then sampled region by region.  Formulas follow
Toro, Riemann Solvers and Numerical Methods for Fluid Dynamics, 3rd ed.,
chapter 4, including the two-rarefaction case where the gas pulls apart
into a vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import RiemannConvergenceError

NEWTON_TOL = 1e-12
NEWTON_CAP = 200
# Data exactly at the vacuum threshold can land on either side of it in
# floating point, so the test gets a little slack.
VACUUM_TOL = 1e-12


@dataclass(frozen=True)
class RiemannStates:
    """Left/right primitive data (rho, u, P) and the gas constant."""

    rho_l: float
    u_l: float
    p_l: float
    rho_r: float
    u_r: float
    p_r: float
    gamma: float = 1.4

    def __post_init__(self):
        if min(self.rho_l, self.rho_r, self.p_l, self.p_r) <= 0.0:
            raise ValueError("Riemann data needs positive density and pressure")

    @property
    def a_l(self):
        return math.sqrt(self.gamma * self.p_l / self.rho_l)

    @property
    def a_r(self):
        return math.sqrt(self.gamma * self.p_r / self.rho_r)


@dataclass(frozen=True)
class StarRegion:
    p: float
    u: float
    rho_l: float   # density on the left side of the contact
    rho_r: float
    vacuum: bool = False


def _f_side(p, rho_k, p_k, a_k, g):
    """One side's pressure function and derivative (Toro eqs. 4.6-4.7)."""
    if p > p_k:     # shock branch
        ak = 2.0 / ((g + 1.0) * rho_k)
        bk = (g - 1.0) / (g + 1.0) * p_k
        root = math.sqrt(ak / (p + bk))
        return (p - p_k) * root, root * (1.0 - 0.5 * (p - p_k) / (p + bk))
    # rarefaction branch; the derivative blows up at p = 0, where only
    # the value is ever needed (vacuum residual checks)
    pr = p / p_k
    f = 2.0 * a_k / (g - 1.0) * (pr ** ((g - 1.0) / (2.0 * g)) - 1.0)
    if pr == 0.0:
        return f, math.inf
    return f, pr ** (-(g + 1.0) / (2.0 * g)) / (rho_k * a_k)


def pressure_function(p, states):
    """Total pressure function F(p); its root is the star pressure."""
    fl, _ = _f_side(p, states.rho_l, states.p_l, states.a_l, states.gamma)
    fr, _ = _f_side(p, states.rho_r, states.p_r, states.a_r, states.gamma)
    return fl + fr + states.u_r - states.u_l


def _star_density(p_star, rho_k, p_k, g):
    pr = p_star / p_k
    if p_star > p_k:
        gr = (g - 1.0) / (g + 1.0)
        return rho_k * (pr + gr) / (gr * pr + 1.0)
    return rho_k * pr ** (1.0 / g)


def solve_star(states):
    """Find the star region; a vacuum case returns p = 0 and rho = 0."""
    g = states.gamma
    du = states.u_r - states.u_l
    crit = 2.0 / (g - 1.0) * (states.a_l + states.a_r)
    if crit - du <= VACUUM_TOL * max(1.0, abs(crit)):
        tail_l = states.u_l + 2.0 * states.a_l / (g - 1.0)
        tail_r = states.u_r - 2.0 * states.a_r / (g - 1.0)
        return StarRegion(0.0, 0.5 * (tail_l + tail_r), 0.0, 0.0, vacuum=True)

    # Two-rarefaction approximation (Toro eq. 4.46) as the starting point;
    # its numerator is positive whenever a vacuum does not form.
    z = (g - 1.0) / (2.0 * g)
    num = states.a_l + states.a_r - 0.5 * (g - 1.0) * du
    den = states.a_l / states.p_l ** z + states.a_r / states.p_r ** z
    p = (num / den) ** (1.0 / z)

    # F(0+) < 0 in the non-vacuum case and F grows without bound, so a
    # sign-change bracket always exists.
    lo = 0.0
    hi = max(states.p_l, states.p_r, p)
    while pressure_function(hi, states) < 0.0:
        hi *= 10.0

    for _ in range(NEWTON_CAP):
        fl, dfl = _f_side(p, states.rho_l, states.p_l, states.a_l, g)
        fr, dfr = _f_side(p, states.rho_r, states.p_r, states.a_r, g)
        f = fl + fr + du
        if f > 0.0:
            hi = p
        else:
            lo = p
        p_new = p - f / (dfl + dfr)
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
        change = abs(p_new - p) / max(0.5 * (p_new + p), 1e-300)
        p = p_new
        if change < NEWTON_TOL:
            break
    else:
        raise RiemannConvergenceError(
            f"star pressure not converged in {NEWTON_CAP} iterations"
        )

    fl, _ = _f_side(p, states.rho_l, states.p_l, states.a_l, g)
    fr, _ = _f_side(p, states.rho_r, states.p_r, states.a_r, g)
    u = 0.5 * (states.u_l + states.u_r + fr - fl)
    return StarRegion(
        p,
        u,
        _star_density(p, states.rho_l, states.p_l, g),
        _star_density(p, states.rho_r, states.p_r, g),
    )


def _fan(rho_k, u_k, a_k, p_k, g, xi, sign):
    """State inside a rarefaction fan; sign +1 for the left wave, -1 for
    the right.  The base is clamped at zero so evaluating the expression
    outside the fan (np.where touches every position) stays finite."""
    base = 2.0 / (g + 1.0) + sign * (g - 1.0) / ((g + 1.0) * a_k) * (u_k - xi)
    base = np.maximum(base, 0.0)
    rho = rho_k * base ** (2.0 / (g - 1.0))
    u = 2.0 / (g + 1.0) * (sign * a_k + 0.5 * (g - 1.0) * u_k + xi)
    p = p_k * base ** (2.0 * g / (g - 1.0))
    return rho, u, p


def _sample_side(rho_k, u_k, p_k, a_k, star, g, xi, sign):
    """Solution arrays assuming xi is on one side of the contact."""
    if star.p > p_k:    # shock
        s = u_k + sign * a_k * math.sqrt(
            (g + 1.0) / (2.0 * g) * star.p / p_k + (g - 1.0) / (2.0 * g)
        )
        rho_star = star.rho_l if sign < 0 else star.rho_r
        ahead = sign * xi > sign * s
        rho = np.where(ahead, rho_k, rho_star)
        u = np.where(ahead, u_k, star.u)
        p = np.where(ahead, p_k, star.p)
        return rho, u, p
    # rarefaction
    a_star = a_k * (star.p / p_k) ** ((g - 1.0) / (2.0 * g))
    head = u_k + sign * a_k
    tail = star.u + sign * a_star
    rho_star = star.rho_l if sign < 0 else star.rho_r
    fan_rho, fan_u, fan_p = _fan(rho_k, u_k, a_k, p_k, g, xi, -sign)
    ahead = sign * xi > sign * head
    behind = sign * xi < sign * tail
    rho = np.select([ahead, behind], [rho_k, rho_star], fan_rho)
    u = np.select([ahead, behind], [u_k, star.u], fan_u)
    p = np.select([ahead, behind], [p_k, star.p], fan_p)
    return rho, u, p


def _sample_vacuum(states, xi):
    g = states.gamma
    head_l = states.u_l - states.a_l
    tail_l = states.u_l + 2.0 * states.a_l / (g - 1.0)
    head_r = states.u_r + states.a_r
    tail_r = states.u_r - 2.0 * states.a_r / (g - 1.0)
    fan_l = _fan(states.rho_l, states.u_l, states.a_l, states.p_l, g, xi, +1)
    fan_r = _fan(states.rho_r, states.u_r, states.a_r, states.p_r, g, xi, -1)
    conds = [xi <= head_l, xi < tail_l, xi <= tail_r, xi < head_r]
    rho = np.select(conds, [states.rho_l, fan_l[0], 0.0, fan_r[0]], states.rho_r)
    # In the empty region the velocity carries no mass; the linear ramp
    # u = xi continues both fans without a jump.
    u = np.select(conds, [states.u_l, fan_l[1], xi, fan_r[1]], states.u_r)
    p = np.select(conds, [states.p_l, fan_l[2], 0.0, fan_r[2]], states.p_r)
    return rho, u, p


def sample(states, xi, star=None):
    """Primitive (rho, u, P) at the self-similar coordinates xi = x/t."""
    if star is None:
        star = solve_star(states)
    xi = np.asarray(xi, dtype=float)
    if star.vacuum:
        return _sample_vacuum(states, xi)
    g = states.gamma
    left = _sample_side(states.rho_l, states.u_l, states.p_l, states.a_l,
                        star, g, xi, -1)
    right = _sample_side(states.rho_r, states.u_r, states.p_r, states.a_r,
                         star, g, xi, +1)
    on_left = xi < star.u
    return tuple(np.where(on_left, m, p) for m, p in zip(left, right))


def solution_on_grid(states, x, t, x0=0.0):
    """Exact primitives on physical coordinates at time t > 0 (falls back
    to the initial data at t = 0)."""
    x = np.asarray(x, dtype=float)
    if t <= 0.0:
        on_left = x <= x0
        rho = np.where(on_left, states.rho_l, states.rho_r)
        u = np.where(on_left, states.u_l, states.u_r)
        p = np.where(on_left, states.p_l, states.p_r)
        return rho, u, p
    return sample(states, (x - x0) / t)
