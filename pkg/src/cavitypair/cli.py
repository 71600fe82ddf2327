"""Command-line front end.

Subcommands::

    sim gfun        survival amplitude of the decaying component vs time
    sim evolve      one trajectory (amplitudes + entanglement) vs time
    sim stationary  long-time amplitudes and entanglement for one setting
    sim sweep       1- or 2-axis parameter sweep
    sim fig <id>    built-in figure presets (fig2a .. fig10b, or fig2 .. fig10)

All defaults are the resonance baseline: R = 0.1, Omega = Delta = DeltaL =
J = 0, r1 = 1/sqrt(2), theta = pi/2, phi = pi.  A flat ``key = value``
config file (--config) overrides the defaults and explicit flags override
the config.  SIM_THREADS overrides --threads.  Exit codes: 0 success,
1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .model import InitialState, SystemParams
from .similar import survival_amplitude, survival_amplitude_J
from .sweep import (
    AXIS_NAMES,
    Axis,
    SweepSpec,
    _fmt,
    resolve_threads,
    run_figure,
    run_sweep,
)
from .volterra import max_stable_dt, solve_volterra
from . import __version__

_DEFAULTS = {
    "R": 0.1,
    "omega": 0.0,
    "delta1": 0.0,
    "delta2": 0.0,
    "deltaL": 0.0,
    "J": 0.0,
    "r1": 1.0 / math.sqrt(2.0),
    "theta": 0.5 * math.pi,
    "phi": math.pi,
}

_PARAM_KEYS = tuple(_DEFAULTS)


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit status 1."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub: argparse.ArgumentParser) -> None:
    for key in _PARAM_KEYS:
        sub.add_argument(f"--{key}", type=float, default=None)
    sub.add_argument("--delta", type=float, default=None,
                     help="set both qubit detunings at once")
    sub.add_argument("--config", type=Path, default=None,
                     help="flat key = value file; flags override it")
    sub.add_argument("--solver", choices=("analytic", "volterra", "dilated", "modes"),
                     default="analytic")
    sub.add_argument("--tmax", type=float, default=None)
    sub.add_argument("--nt", type=int, default=None,
                     help="number of recorded time points")
    sub.add_argument("--dt", type=float, default=None,
                     help="numeric-solver step (default: stability bound / 4)")
    sub.add_argument("--n-modes", type=int, default=2001)
    sub.add_argument("--cutoff", type=float, default=100.0)
    sub.add_argument("--out", type=Path, default=None)
    sub.add_argument("--verify", action="store_true",
                     help="re-check every 20th grid point against the oracle")
    sub.add_argument("--threads", type=int, default=None)


def _read_config(path: Path) -> dict[str, float]:
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        if key not in _PARAM_KEYS and key != "delta":
            raise ValueError(f"{path}:{lineno}: unknown parameter {key!r}")
        values[key] = float(text.strip())
    return values


def _gather(args) -> tuple[SystemParams, InitialState]:
    values = dict(_DEFAULTS)
    if args.config is not None:
        config = _read_config(args.config)
        if "delta" in config:
            d = config.pop("delta")
            config["delta1"] = config.get("delta1", d)
            config["delta2"] = config.get("delta2", d)
        values.update(config)
    if args.delta is not None:
        values["delta1"] = args.delta
        values["delta2"] = args.delta
    for key in _PARAM_KEYS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    params = SystemParams(
        R=values["R"], Omega=values["omega"],
        Delta1=values["delta1"], Delta2=values["delta2"],
        DeltaL=values["deltaL"], J=values["J"], r1=values["r1"],
    )
    init = InitialState(theta=values["theta"], phi=values["phi"])
    return params, init


def _scenario_for(params: SystemParams) -> str:
    if params.Delta1 != params.Delta2:
        return "dissimilar"
    return "similar-J" if params.J != 0.0 else "similar"


def _tau_grid(args, strong: bool) -> tuple[float, ...]:
    tmax = args.tmax if args.tmax is not None else (4.0 if strong else 400.0)
    nt = args.nt if args.nt is not None else (801 if strong else 2001)
    if tmax <= 0.0:
        raise ValueError(f"tmax must be positive, got {tmax}")
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    return tuple(tmax * i / (nt - 1) for i in range(nt))


def _cmd_gfun(args) -> int:
    params, _ = _gather(args)
    if not params.similar:
        raise ValueError("the survival amplitude needs Delta1 == Delta2")
    grid = _tau_grid(args, strong=params.R > 1.0)
    fn = survival_amplitude_J if params.J != 0.0 else survival_amplitude
    values = [fn(tau, params) for tau in grid]

    if args.verify:
        # the initial pair (c1, c2) = (r1, r2) is fully decaying: c1 = r1 * g
        theta_s = 2.0 * math.atan2(params.r2, params.r1)
        oracle = solve_volterra(
            params, InitialState(theta=theta_s, phi=0.0),
            grid[-1], 0.25 * max_stable_dt(params),
        )
        for i in range(0, len(grid), 20):
            j = int(min(range(len(oracle.tau)), key=lambda k: abs(oracle.tau[k] - grid[i])))
            g_oracle = oracle.c1[j] / params.r1
            if abs(abs(values[i]) - abs(g_oracle)) > 1e-3:
                raise RuntimeError(
                    f"verify failed at tau = {grid[i]:g}: |g| = {abs(values[i]):.6f} "
                    f"vs oracle {abs(g_oracle):.6f}"
                )

    out = args.out if args.out is not None else Path("gfun.csv")
    with open(out, "w", newline="") as fh:
        fh.write(f"# generator = cavitypair {__version__}\n")
        for key in ("R", "Omega", "Delta1", "DeltaL", "J"):
            fh.write(f"# {key} = {_fmt(getattr(params, key))}\n")
        fh.write("tau,re_g,im_g,abs_g\n")
        for tau, g in zip(grid, values):
            fh.write(f"{_fmt(tau)},{_fmt(g.real)},{_fmt(g.imag)},{_fmt(abs(g))}\n")
    print(out)
    return 0


def _cmd_evolve(args) -> int:
    params, init = _gather(args)
    scenario = _scenario_for(params)
    spec = SweepSpec(
        scenario=scenario,
        solver=args.solver,
        params=params,
        init=init,
        axes=(),
        tau_grid=_tau_grid(args, strong=params.R > 1.0),
        dt=args.dt,
        n_modes=args.n_modes,
        cutoff=args.cutoff,
    )
    out = args.out if args.out is not None else Path("evolve.csv")
    print(run_sweep(spec, out, threads=args.threads, verify=args.verify))
    return 0


def _cmd_stationary(args) -> int:
    params, init = _gather(args)
    if not params.similar:
        raise ValueError("stationary amplitudes need Delta1 == Delta2")
    spec = SweepSpec(
        scenario="stationary",
        solver="analytic",
        params=params,
        init=init,
        axes=(),
        tau_grid=(),
    )
    out = args.out if args.out is not None else Path("stationary.csv")
    print(run_sweep(spec, out, threads=args.threads, verify=args.verify))
    return 0


def _parse_axis(text: str) -> Axis:
    name, _, grid = text.partition("=")
    name = name.strip()
    canonical = {n.lower(): n for n in AXIS_NAMES}
    if name.lower() not in canonical:
        raise ValueError(f"unknown axis {name!r} (known: {AXIS_NAMES})")
    parts = grid.split(":")
    if len(parts) != 3:
        raise ValueError(f"axis {name!r} needs min:max:count, got {grid!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    return Axis.linspace(canonical[name.lower()], lo, hi, count)


def _cmd_sweep(args) -> int:
    params, init = _gather(args)
    axes = tuple(_parse_axis(a) for a in args.axis)
    scenario = args.scenario or _scenario_for(params)
    tau_grid = () if scenario.startswith("stationary") else _tau_grid(
        args, strong=params.R > 1.0
    )
    spec = SweepSpec(
        scenario=scenario,
        solver=args.solver,
        params=params,
        init=init,
        axes=axes,
        tau_grid=tau_grid,
        dt=args.dt,
        n_modes=args.n_modes,
        cutoff=args.cutoff,
    )
    out = args.out if args.out is not None else Path("sweep.csv")
    print(run_sweep(spec, out, threads=args.threads, verify=args.verify))
    return 0


def _cmd_fig(args) -> int:
    out_dir = args.out if args.out is not None else Path(".")
    for path in run_figure(args.id, out_dir, threads=args.threads, verify=args.verify):
        print(path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="sim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sim {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    for name, fn in (
        ("gfun", _cmd_gfun),
        ("evolve", _cmd_evolve),
        ("stationary", _cmd_stationary),
        ("sweep", _cmd_sweep),
        ("fig", _cmd_fig),
    ):
        sub = subs.add_parser(name)
        sub.set_defaults(fn=fn)
        if name == "fig":
            sub.add_argument("id", help="preset id, e.g. fig5b or fig2")
        if name == "sweep":
            sub.add_argument("--axis", action="append", default=[],
                             metavar="NAME=MIN:MAX:COUNT", required=True)
            sub.add_argument(
                "--scenario",
                choices=("similar", "similar-J", "dissimilar", "stationary"),
                default=None,
            )
        _add_common(sub)

    args = parser.parse_args(argv)
    try:
        resolve_threads(args.threads)  # surface bad SIM_THREADS early
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
