"""Command-line driver.

Subcommands: `train` fits the weighting network from a key = value
config file; `run` solves one benchmark problem with one scheme and
writes CSV (1D) or per-component field dumps (2D); `convergence` runs a
refinement study on smooth periodic advection; `compare` runs several
schemes on one problem and tabulates errors against the reference.

Exit codes: 0 success; 2 bad usage; 3 unknown (or unsupported) problem;
4 unknown scheme; 5 weight-file problem; 6 solver or training failure;
7 bad training configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import network
from . import reconstruction as rec
from .benchmarks import errors as berr
from .benchmarks import problems, reference
from .errors import ParamsFormatError, PositivityError
from .solvers import driver, euler
from .training import loop

EXIT_PROBLEM = 3
EXIT_SCHEME = 4
EXIT_WEIGHTS = 5
EXIT_SOLVER = 6
EXIT_CONFIG = 7

_FIXED_SCHEMES = {
    "weno3-js": rec.Weno3JS,
    "weno3-z": rec.Weno3Z,
    "weno3-linear": rec.Linear3,
    "weno5-js": rec.Weno5JS,
    "weno5-m": rec.Weno5M,
    "weno5-linear": rec.Linear5,
}
_NEURAL_SCHEMES = ("weno3-cadnn1", "weno3-cadnn2")

COMPARE_DEFAULT = ["weno3-z", "weno3-cadnn1", "weno3-cadnn2", "weno5-js"]


class _UnknownScheme(Exception):
    pass


def scheme_names():
    return list(_FIXED_SCHEMES) + list(_NEURAL_SCHEMES)


def load_strategy(name, weights_path=None):
    """Build the reconstruction strategy for a scheme name; the neural
    schemes resolve bundled parameter files unless a path is given."""
    if name in _FIXED_SCHEMES:
        return _FIXED_SCHEMES[name]()
    if name in _NEURAL_SCHEMES:
        if weights_path is not None:
            params = network.load_params(weights_path)
        else:
            ref = resources.files("wenocad").joinpath(
                "data/" + name.removeprefix("weno3-") + ".json"
            )
            if not ref.is_file():
                raise FileNotFoundError(
                    f"no bundled weights for {name}; pass --weights PATH"
                )
            with resources.as_file(ref) as p:
                params = network.load_params(p)
        return rec.NeuralWeighting3(params, label=name)
    raise _UnknownScheme(name)


def _fail(message, code):
    print(f"wenocad: {message}", file=sys.stderr)
    return code


def _resolve_strategy(name, weights_path):
    """Returns (strategy, None) or (None, exit code)."""
    try:
        return load_strategy(name, weights_path), None
    except _UnknownScheme:
        known = ", ".join(scheme_names())
        return None, _fail(f"unknown scheme {name!r}; known: {known}",
                           EXIT_SCHEME)
    except (OSError, ParamsFormatError) as exc:
        return None, _fail(f"cannot load weights for {name}: {exc}",
                           EXIT_WEIGHTS)


def _write_csv(path, names, columns):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(names) + "\n")
        for row in zip(*columns):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _write_field(path, field, grid, t):
    nx, ny = field.shape
    xmin, xmax = grid.xmin, grid.xmin + nx * grid.dx
    ymin, ymax = grid.ymin, grid.ymin + ny * grid.dy
    with open(path, "w", newline="") as fh:
        fh.write(f"# {nx} {ny} {xmin:.17g} {xmax:.17g} "
                 f"{ymin:.17g} {ymax:.17g} {t:.17g}\n")
        np.savetxt(fh, field, fmt="%.17g")


def _progress_printer(enabled):
    if not enabled:
        return None

    def tick(t, t_final, steps):
        if steps % 100 == 0:
            print(f"  t = {t:.5f} / {t_final:.5f}  ({steps} steps)",
                  file=sys.stderr)
    return tick


def _dump_run_1d(outdir, spec, grid, result):
    x = grid.x_centers
    ref = reference.reference_solution(spec, x, result.t)
    meta = {}
    if grid.kind == "scalar":
        u = grid.interior[:, 0]
        names, cols = ["x", "u"], [x, u]
        if ref is not None:
            rep = berr.error_report(u, ref, grid.dx, x)
            names += ["u_ref", "err"]
            cols += [ref, rep.pointwise]
            meta.update(l1=rep.l1, linf=rep.linf)
    else:
        rho, vel, p = euler.cons_to_prim_1d(grid.interior, grid.gamma,
                                            check=False)
        names = ["x", "density", "velocity", "pressure"]
        cols = [x, rho, vel, p]
        if ref is not None:
            rep = berr.error_report(rho, ref[0], grid.dx, x)
            names += ["density_ref", "velocity_ref", "pressure_ref",
                      "density_err"]
            cols += [ref[0], ref[1], ref[2], rep.pointwise]
            meta.update(l1_density=rep.l1, linf_density=rep.linf)
    _write_csv(outdir / "solution.csv", names, cols)
    return meta


def _dump_run_2d(outdir, grid, result):
    rho, u, v, p = euler.cons_to_prim_2d(grid.interior, grid.gamma,
                                         check=False)
    for fname, field in (("rho.dat", rho), ("velocity_x.dat", u),
                         ("velocity_y.dat", v), ("pressure.dat", p)):
        _write_field(outdir / fname, field, grid, result.t)


def cmd_run(args):
    try:
        spec = problems.get(args.problem)
    except KeyError as exc:
        return _fail(str(exc), EXIT_PROBLEM)
    strategy, code = _resolve_strategy(args.scheme, args.weights)
    if strategy is None:
        return code

    ng = rec.ghost_width(strategy)
    nx = args.nx or args.n
    grid, bc, source = problems.make_grid(spec, ng, nx=nx, ny=args.ny)
    t_final = args.tfinal if args.tfinal is not None else spec.t_final

    try:
        result = driver.advance(grid, bc, strategy, t_final, cfl=args.cfl,
                                source=source,
                                progress=_progress_printer(args.progress))
    except (PositivityError, FloatingPointError, RuntimeError) as exc:
        return _fail(f"solver failed: {exc}", EXIT_SOLVER)

    outdir = Path(args.out) if args.out else Path(f"{spec.name}_{args.scheme}")
    outdir.mkdir(parents=True, exist_ok=True)

    meta = {
        "problem": spec.name,
        "scheme": strategy.name,
        "t_final": result.t,
        "cfl": args.cfl,
        "steps": result.steps,
        "wall_time": round(result.wall_time, 3),
    }
    if spec.dimension == 1:
        meta["n"] = grid.n
        meta.update(_dump_run_1d(outdir, spec, grid, result))
    else:
        meta["nx"], meta["ny"] = grid.nx, grid.ny
        _dump_run_2d(outdir, grid, result)
    if np.isfinite(result.min_density):
        meta["min_density"] = result.min_density
        meta["min_pressure"] = result.min_pressure
    with open(outdir / "run.json", "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")

    print(f"{spec.name} / {strategy.name}: {result.steps} steps to "
          f"t = {result.t:g} in {result.wall_time:.2f} s -> {outdir}/")
    return 0


def _advect_sine(strategy, n, t_final, cfl):
    """March u_t + u_x = 0, u0 = sin(pi x), with dt matched to the
    formal spatial order so the time error never caps the study."""
    from .solvers import boundary as bdy

    ng = rec.ghost_width(strategy)
    dx = 2.0 / n
    x = driver.cell_centers(-1.0, 1.0, n)
    u = np.zeros((n + 2 * ng, 1))
    u[ng:-ng, 0] = np.sin(np.pi * x)
    grid = driver.Grid1D(u, dx, ng, -1.0, kind="scalar")
    bc = bdy.Boundary1D("periodic", "periodic")
    order = 3 if strategy.stencil_width == 3 else 5
    dt = cfl * dx ** (order / 3.0)
    t = 0.0
    while t < t_final:
        step = min(dt, t_final - t)
        driver.rk3_step(grid, bc, strategy, step, t)
        t += step
    exact = np.sin(np.pi * (x - t))
    return berr.error_report(grid.interior[:, 0], exact, dx, x)


def cmd_convergence(args):
    if args.problem != "smooth-advection":
        return _fail(
            "convergence studies run on the smooth-advection problem only",
            EXIT_PROBLEM,
        )
    strategy, code = _resolve_strategy(args.scheme, args.weights)
    if strategy is None:
        return code
    try:
        levels = [int(v) for v in args.levels.split(",")]
    except ValueError:
        return _fail(f"bad --levels {args.levels!r}", 2)

    rows = []
    prev = None
    for n in levels:
        rep = _advect_sine(strategy, n, args.tfinal, args.cfl)
        eoc_linf = eoc_l1 = float("nan")
        if prev is not None:
            ratio = np.log(n / prev[0])
            eoc_linf = float(np.log(prev[1] / rep.linf) / ratio)
            eoc_l1 = float(np.log(prev[2] / rep.l1) / ratio)
        rows.append((n, 2.0 / n, rep.linf, eoc_linf, rep.l1, eoc_l1))
        prev = (n, rep.linf, rep.l1)

    out = Path(args.out) if args.out else Path(f"convergence_{args.scheme}.csv")
    names = ["n", "dx", "linf", "eoc_linf", "l1", "eoc_l1"]
    _write_csv(out, names, list(zip(*rows)))

    print(f"{'n':>6} {'dx':>10} {'Linf':>12} {'EOC':>6} {'L1':>12} {'EOC':>6}")
    for n, dx, linf, eoc_i, l1, eoc_1 in rows:
        print(f"{n:>6} {dx:>10.2e} {linf:>12.4e} {eoc_i:>6.2f} "
              f"{l1:>12.4e} {eoc_1:>6.2f}")
    print(f"table -> {out}")
    return 0


def cmd_compare(args):
    try:
        spec = problems.get(args.problem)
    except KeyError as exc:
        return _fail(str(exc), EXIT_PROBLEM)
    if spec.dimension != 1 or not spec.reference:
        return _fail(
            f"compare needs a 1D problem with a reference; "
            f"{spec.name} has none", EXIT_PROBLEM,
        )

    strategies = []
    for name in args.schemes:
        strategy, code = _resolve_strategy(name, None)
        if strategy is None:
            return code
        strategies.append(strategy)

    nx = args.n or spec.resolution[0]
    x = driver.cell_centers(spec.bounds[0], spec.bounds[1], nx)
    ref = reference.reference_solution(spec, x)
    ref_rho = ref if spec.system == "advection" else ref[0]

    rows = []
    for strategy in strategies:
        grid, bc, source = problems.make_grid(
            spec, rec.ghost_width(strategy), nx=nx)
        try:
            result = driver.advance(grid, bc, strategy, spec.t_final,
                                    cfl=args.cfl, source=source)
        except (PositivityError, FloatingPointError, RuntimeError) as exc:
            return _fail(f"{strategy.name} failed: {exc}", EXIT_SOLVER)
        if spec.system == "advection":
            num = grid.interior[:, 0]
        else:
            num = euler.cons_to_prim_1d(grid.interior, grid.gamma,
                                        check=False)[0]
        rep = berr.error_report(num, ref_rho, grid.dx, x)
        rows.append((strategy.name, rep.l1, rep.linf, result.steps,
                     result.wall_time))

    out = Path(args.out) if args.out else Path(f"compare_{spec.name}.csv")
    names = ["scheme", "l1", "linf", "steps", "wall_time"]
    with open(out, "w", newline="") as fh:
        fh.write(",".join(names) + "\n")
        for name, l1, linf, steps, wall in rows:
            fh.write(f"{name},{l1:.17g},{linf:.17g},{steps},{wall:.3f}\n")

    print(f"{'scheme':<14} {'L1':>12} {'Linf':>12} {'steps':>7} {'wall':>8}")
    for name, l1, linf, steps, wall in rows:
        print(f"{name:<14} {l1:>12.4e} {linf:>12.4e} {steps:>7} {wall:>7.2f}s")
    print(f"table -> {out}")
    return 0


def cmd_train(args):
    try:
        hyper, out_path, hist_path = loop.read_train_config(args.config)
    except (OSError, ValueError) as exc:
        return _fail(f"bad training config: {exc}", EXIT_CONFIG)

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    print(f"training with C = {hyper.hyper_c:g}, D = {hyper.hyper_d:g}, "
          f"lr = {hyper.lr:g}, {hyper.epochs} epochs, seed {hyper.seed}")
    try:
        params, history = loop.train(hyper, log_every=args.log_every)
    except Exception as exc:
        return _fail(f"training failed: {exc}", EXIT_SOLVER)

    network.save_params(params, out_path)
    if hist_path:
        loop.write_history(history, hist_path)
        print(f"loss history -> {hist_path}")
    print(f"best full-dataset loss {params.training_loss:.6g} -> {out_path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wenocad",
        description="WENO benchmark solvers with a trainable weighting "
                    "function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train the weighting network")
    p.add_argument("config", help="key = value configuration file")
    p.add_argument("--log-every", type=int, default=10, metavar="E",
                   help="log the loss every E epochs (default 10)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("run", help="run one problem with one scheme")
    p.add_argument("--problem", required=True)
    p.add_argument("--scheme", required=True,
                   help="one of: " + ", ".join(scheme_names()))
    p.add_argument("--weights", help="parameter file for the neural schemes")
    p.add_argument("--n", type=int, help="1D resolution override")
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--tfinal", type=float)
    p.add_argument("--cfl", type=float, default=driver.CFL_DEFAULT)
    p.add_argument("--out", help="output directory (default PROBLEM_SCHEME)")
    p.add_argument("--progress", action="store_true",
                   help="print progress to stderr")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("convergence",
                       help="refinement study on smooth advection")
    p.add_argument("--problem", default="smooth-advection")
    p.add_argument("--scheme", required=True)
    p.add_argument("--weights")
    p.add_argument("--levels", default="40,80,160,320",
                   help="comma-separated resolutions")
    p.add_argument("--tfinal", type=float, default=1.0)
    p.add_argument("--cfl", type=float, default=driver.CFL_DEFAULT)
    p.add_argument("--out", help="output CSV path")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("compare",
                       help="run several schemes on one problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--schemes", nargs="+", default=COMPARE_DEFAULT)
    p.add_argument("--n", type=int)
    p.add_argument("--cfl", type=float, default=driver.CFL_DEFAULT)
    p.add_argument("--out", help="output CSV path")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
