"""Grids, semi-discrete right-hand sides, and TVD Runge-Kutta stepping.

Spatial sweeps are dimension-by-dimension with component-wise
reconstruction; each direction uses one global Lax-Friedrichs speed per
evaluation.  Time integration is the third-order TVD scheme of Shu and
Osher, JCP 77, 439-471 (1988):

    u1 = u + dt L(u)
    u2 = 3/4 u + 1/4 (u1 + dt L(u1))
    u  = 1/3 u + 2/3 (u2 + dt L(u2))

with dt = CFL dx for scalar advection, CFL dx / alpha for one-dimensional
systems, and CFL / (ax/dx + ay/dy) in two dimensions, the final step
clipped to land exactly on the requested time.

Runs that pull a vacuum (or a very strong shock) can push a cell to
negative pressure inside a stage even though the scheme is stable
everywhere else.  Each forward-Euler piece therefore checks its
candidate state and, where it turns non-physical, swaps the interface
fluxes bordering the offending cells for the first-order flux of the
split upwinding, which keeps density and pressure positive under the
CFL bound (Zhang and Shu, JCP 229 (2010); a posteriori fail-safe in the
spirit of Clain, Diot and Loubere, JCP 230 (2011)).  The swap is
conservative, local, and inactive on runs that never get near vacuum;
the TVD stages are convex combinations of the checked pieces, so the
guarantee carries to the full step.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import reconstruction as rec
from ..errors import DimensionError
from . import boundary as bdy
from . import euler

CFL_DEFAULT = 0.4
MAX_STEPS_DEFAULT = 2_000_000
FALLBACK_ROUNDS = 6


def cell_centers(lo, hi, n):
    dx = (hi - lo) / n
    return lo + (np.arange(n) + 0.5) * dx


@dataclass
class Grid1D:
    u: np.ndarray          # (n + 2 ng, m) padded conserved state
    dx: float
    ng: int
    xmin: float
    kind: str = "euler1d"  # or "scalar"
    gamma: float = euler.GAMMA_DEFAULT

    @property
    def n(self):
        return self.u.shape[0] - 2 * self.ng

    @property
    def interior(self):
        return self.u[self.ng : -self.ng]

    @property
    def x_centers(self):
        return self.xmin + (np.arange(self.n) + 0.5) * self.dx

    @property
    def x_padded(self):
        return self.xmin + (np.arange(-self.ng, self.n + self.ng) + 0.5) * self.dx


@dataclass
class Grid2D:
    u: np.ndarray          # (nx + 2 ng, ny + 2 ng, m)
    dx: float
    dy: float
    ng: int
    xmin: float
    ymin: float
    gamma: float = euler.GAMMA_DEFAULT
    solid: np.ndarray | None = None   # mask over physical cells, True = solid

    @property
    def nx(self):
        return self.u.shape[0] - 2 * self.ng

    @property
    def ny(self):
        return self.u.shape[1] - 2 * self.ng

    @property
    def interior(self):
        return self.u[self.ng : -self.ng, self.ng : -self.ng]

    @property
    def x_centers(self):
        return self.xmin + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def y_centers(self):
        return self.ymin + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def x_padded(self):
        return self.xmin + (np.arange(-self.ng, self.nx + self.ng) + 0.5) * self.dx

    @property
    def y_padded(self):
        return self.ymin + (np.arange(-self.ng, self.ny + self.ng) + 0.5) * self.dy


def _require_ghosts(grid, strategy):
    if grid.ng < rec.ghost_width(strategy):
        raise DimensionError(
            f"grid has {grid.ng} ghost cells, reconstruction needs "
            f"{rec.ghost_width(strategy)}"
        )


def _trim(h, extra):
    return h[extra:-extra] if extra else h


def _fluxes_1d(grid, strategy):
    """WENO interface fluxes and the first-order fallback fluxes at the
    n + 1 interfaces bordering physical cells (ghosts already filled)."""
    u = grid.u
    if grid.kind == "scalar":
        f = u.copy()
        alpha = 1.0
    else:
        f = euler.euler_flux_1d(u, grid.gamma)
        alpha = euler.max_wave_speed_1d(u, grid.gamma)
    fp, fm = rec.lax_friedrichs_split(f, u, alpha)
    h = _trim(rec.interface_fluxes(fp, fm, strategy),
              grid.ng - rec.ghost_width(strategy))
    ng, n = grid.ng, grid.n
    hl = fp[ng - 1 : ng + n] + fm[ng : ng + n + 1]
    return h, hl


def compute_rhs_1d(grid, bc, strategy, t=0.0, source=None):
    """-d f(u)/dx on the physical cells, ghosts refreshed first."""
    _require_ghosts(grid, strategy)
    bdy.fill_ghosts_1d(grid, bc, t)
    h, _ = _fluxes_1d(grid, strategy)
    out = -(h[1:] - h[:-1]) / grid.dx
    if source is not None:
        out = out + source(grid.interior, grid.gamma)
    return out


def _fluxes_2d(grid, strategy):
    ng = grid.ng
    extra = ng - rec.ghost_width(strategy)
    ax, ay = euler.max_wave_speed_2d(grid.u, grid.gamma)

    ux = grid.u[:, ng:-ng]
    fx = euler.euler_flux_2d_x(ux, grid.gamma)
    fpx, fmx = rec.lax_friedrichs_split(fx, ux, ax)
    hx = _trim(rec.interface_fluxes(fpx, fmx, strategy), extra)
    hlx = fpx[ng - 1 : ng + grid.nx] + fmx[ng : ng + grid.nx + 1]

    uy = grid.u[ng:-ng].swapaxes(0, 1)
    fy = euler.euler_flux_2d_y(uy, grid.gamma)
    fpy, fmy = rec.lax_friedrichs_split(fy, uy, ay)
    hy = _trim(rec.interface_fluxes(fpy, fmy, strategy), extra)
    hly = fpy[ng - 1 : ng + grid.ny] + fmy[ng : ng + grid.ny + 1]
    return (hx, hlx), (hy, hly)


def _assemble_2d(grid, hx, hy, source):
    ddx = (hx[1:] - hx[:-1]) / grid.dx
    ddy = ((hy[1:] - hy[:-1]) / grid.dy).swapaxes(0, 1)
    out = -(ddx + ddy)
    if source is not None:
        out = out + source(grid.interior, grid.gamma)
    return out


def compute_rhs_2d(grid, bc, strategy, t=0.0, source=None):
    """Dimension-by-dimension flux differences on the physical cells."""
    _require_ghosts(grid, strategy)
    bdy.fill_ghosts_2d(grid, bc, t)
    (hx, _), (hy, _) = _fluxes_2d(grid, strategy)
    return _assemble_2d(grid, hx, hy, source)


def _admissible(v, gamma):
    """Per-cell check that a candidate Euler state is usable."""
    if v.shape[-1] == 3:
        rho, _, p = euler.cons_to_prim_1d(v, gamma, check=False)
    else:
        rho, _, _, p = euler.cons_to_prim_2d(v, gamma, check=False)
    return (rho > 0.0) & (p > 0.0) & np.isfinite(rho) & np.isfinite(p)


def _forward_piece_1d(grid, bc, strategy, dt, t, source, counters):
    """u + dt L(u), falling back to first-order fluxes around cells the
    candidate update would make non-physical."""
    bdy.fill_ghosts_1d(grid, bc, t)
    h, hl = _fluxes_1d(grid, strategy)

    def build(hh):
        out = -(hh[1:] - hh[:-1]) / grid.dx
        if source is not None:
            out = out + source(grid.interior, grid.gamma)
        return grid.interior + dt * out

    v = build(h)
    if grid.kind == "scalar":
        return v
    ok = _admissible(v, grid.gamma)
    if ok.all():
        return v

    counters["stages"] += 1
    counters["cells"] += int(np.count_nonzero(~ok))
    replaced = np.zeros(h.shape[0], dtype=bool)
    for _ in range(FALLBACK_ROUNDS):
        bad = ~ok
        replaced[:-1] |= bad
        replaced[1:] |= bad
        v = build(np.where(replaced[:, None], hl, h))
        ok = _admissible(v, grid.gamma)
        if ok.all():
            return v
    return build(hl)


def _forward_piece_2d(grid, bc, strategy, dt, t, source, counters):
    bdy.fill_ghosts_2d(grid, bc, t)
    (hx, hlx), (hy, hly) = _fluxes_2d(grid, strategy)

    def build(hx_, hy_):
        return grid.interior + dt * _assemble_2d(grid, hx_, hy_, source)

    v = build(hx, hy)
    ok = _admissible(v, grid.gamma)
    if ok.all():
        return v

    counters["stages"] += 1
    counters["cells"] += int(np.count_nonzero(~ok))
    repx = np.zeros(hx.shape[:2], dtype=bool)
    repy = np.zeros(hy.shape[:2], dtype=bool)
    for _ in range(FALLBACK_ROUNDS):
        bad = ~ok
        repx[:-1] |= bad
        repx[1:] |= bad
        repy[:-1] |= bad.T
        repy[1:] |= bad.T
        v = build(np.where(repx[..., None], hlx, hx),
                  np.where(repy[..., None], hly, hy))
        ok = _admissible(v, grid.gamma)
        if ok.all():
            return v
    return build(hlx, hly)


def rk3_step(grid, bc, strategy, dt, t=0.0, source=None, counters=None):
    """One TVD-RK3 step; raises if a stage produces non-finite values."""
    _require_ghosts(grid, strategy)
    if counters is None:
        counters = {"stages": 0, "cells": 0}
    if isinstance(grid, Grid1D):
        piece, sl = _forward_piece_1d, (slice(grid.ng, -grid.ng),)
    else:
        piece, sl = _forward_piece_2d, (slice(grid.ng, -grid.ng),) * 2

    u0 = grid.u[sl].copy()

    grid.u[sl] = piece(grid, bc, strategy, dt, t, source, counters)
    _check_finite(grid.u[sl], "stage 1")

    v = piece(grid, bc, strategy, dt, t + dt, source, counters)
    grid.u[sl] = 0.75 * u0 + 0.25 * v
    _check_finite(grid.u[sl], "stage 2")

    v = piece(grid, bc, strategy, dt, t + 0.5 * dt, source, counters)
    grid.u[sl] = u0 / 3.0 + (2.0 / 3.0) * v
    _check_finite(grid.u[sl], "stage 3")
    return grid


def _check_finite(a, where):
    if not np.all(np.isfinite(a)):
        raise FloatingPointError(f"non-finite state after {where}")


@dataclass
class RunResult:
    grid: object
    t: float
    steps: int
    wall_time: float
    min_density: float = float("inf")
    min_pressure: float = float("inf")
    fallback_stages: int = 0
    fallback_cells: int = 0
    dt_history: list = field(default_factory=list, repr=False)


def _stable_dt(grid, cfl):
    if isinstance(grid, Grid1D):
        if grid.kind == "scalar":
            return cfl * grid.dx
        alpha = euler.max_wave_speed_1d(grid.interior, grid.gamma)
        return cfl * grid.dx / alpha
    ax, ay = euler.max_wave_speed_2d(grid.interior, grid.gamma)
    return cfl / (ax / grid.dx + ay / grid.dy)


def _min_rho_p(grid):
    q = grid.interior
    if q.shape[-1] == 3:
        rho, _, p = euler.cons_to_prim_1d(q, grid.gamma, check=False)
    else:
        rho, _, _, p = euler.cons_to_prim_2d(q, grid.gamma, check=False)
    if isinstance(grid, Grid2D) and grid.solid is not None:
        keep = ~grid.solid
        rho = rho[keep]
        p = p[keep]
    return float(np.min(rho)), float(np.min(p))


def advance(grid, bc, strategy, t_final, cfl=CFL_DEFAULT, source=None,
            max_steps=MAX_STEPS_DEFAULT, progress=None):
    """March the grid to t_final, tracking run diagnostics."""
    t = 0.0
    steps = 0
    start = time.perf_counter()
    result = RunResult(grid=grid, t=t, steps=0, wall_time=0.0)
    counters = {"stages": 0, "cells": 0}
    scalar = isinstance(grid, Grid1D) and grid.kind == "scalar"

    while t < t_final:
        if steps >= max_steps:
            raise RuntimeError(f"step cap {max_steps} reached at t = {t:.6g}")
        dt = min(_stable_dt(grid, cfl), t_final - t)
        rk3_step(grid, bc, strategy, dt, t, source, counters)
        t += dt
        steps += 1
        result.dt_history.append(dt)
        if not scalar:
            rho_min, p_min = _min_rho_p(grid)
            result.min_density = min(result.min_density, rho_min)
            result.min_pressure = min(result.min_pressure, p_min)
        if progress is not None:
            progress(t, t_final, steps)

    result.t = t
    result.steps = steps
    result.wall_time = time.perf_counter() - start
    result.fallback_stages = counters["stages"]
    result.fallback_cells = counters["cells"]
    return result
