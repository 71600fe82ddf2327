"""Deterministic parameter sweeps with CSV output.

Every run writes one RFC-4180-style CSV: comment lines ``# key = value``
recording all parameters and the package version, a header row, then one
row per grid point with 17-significant-digit decimal values.  Row order is
lexicographic in the swept axes, then in scaled time, and is independent
of the worker count, so repeated runs are byte-identical.
"""

from __future__ import annotations

import dataclasses
import math
import multiprocessing
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .dissimilar import amplitudes_dissimilar
from .entanglement import concurrence, entanglement_stationary, optimize_stationary
from .model import AmplitudePair, InitialState, SystemParams, density_matrix
from .similar import amplitudes_J, amplitudes_similar, decay_time
from .volterra import max_stable_dt, solve_dilated, solve_discrete_modes, solve_volterra

SCENARIOS = ("similar", "similar-J", "dissimilar", "stationary", "stationary-max")
SOLVERS = ("analytic", "volterra", "dilated", "modes")

#: swept-parameter names; "Delta" moves both qubit detunings together
AXIS_NAMES = ("R", "Omega", "Delta", "Delta1", "Delta2", "DeltaL", "J", "r1", "theta", "phi")
_STATIONARY_AXES = ("r1", "theta", "phi")

#: --verify tolerances on |E/M - oracle| per solver family
_VERIFY_TOL = {"analytic": 1e-3, "volterra": 1e-3, "dilated": 1e-3, "modes": 5e-3}
_VERIFY_EVERY = 20

COLUMNS = ("tau", "re_c1", "im_c1", "re_c2", "im_c2", "e_over_m", "concurrence")


@dataclass(frozen=True)
class Axis:
    """One swept parameter with its explicit grid values."""

    name: str
    grid: tuple[float, ...]

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, count: int) -> Axis:
        if count < 2:
            raise ValueError(f"axis '{name}' needs at least 2 points, got {count}")
        if not hi > lo:
            raise ValueError(f"axis '{name}' needs max > min, got [{lo}, {hi}]")
        return cls(name=name, grid=tuple(np.linspace(lo, hi, count)))

    @classmethod
    def values(cls, name: str, values: tuple[float, ...]) -> Axis:
        if len(values) < 2:
            raise ValueError(f"axis '{name}' needs at least 2 points")
        if len(set(values)) != len(values):
            raise ValueError(f"axis '{name}' has repeated values")
        return cls(name=name, grid=tuple(float(v) for v in values))

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown axis '{self.name}' (known: {AXIS_NAMES})")


@dataclass(frozen=True)
class SweepSpec:
    """A validated sweep: scenario, solver, fixed values, axes and times."""

    scenario: str
    solver: str
    params: SystemParams
    init: InitialState
    axes: tuple[Axis, ...]
    tau_grid: tuple[float, ...]    # empty for the stationary scenarios
    dt: float | None = None        # numeric solvers; None picks the bound/4
    n_modes: int = 2001
    cutoff: float = 100.0

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario '{self.scenario}' (known: {SCENARIOS})")
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver '{self.solver}' (known: {SOLVERS})")
        if len(self.axes) > 2:
            raise ValueError("at most 2 swept axes are supported")
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"swept axes must be distinct, got {names}")
        if self.scenario.startswith("stationary"):
            if self.solver != "analytic":
                raise ValueError(
                    f"scenario '{self.scenario}' only supports the analytic solver"
                )
            bad = [n for n in names if n not in _STATIONARY_AXES]
            if bad:
                raise ValueError(
                    f"stationary scenarios only sweep {_STATIONARY_AXES}, got {bad}"
                )
            if self.params.Delta1 != self.params.Delta2:
                raise ValueError(
                    "the stationary projection exists only for Delta1 == Delta2"
                )
        else:
            if not self.tau_grid:
                raise ValueError(f"scenario '{self.scenario}' needs a time grid")
            if any(t < 0.0 for t in self.tau_grid):
                raise ValueError("time grid values must be >= 0")
        if self.scenario in ("similar", "similar-J"):
            if "Delta1" in names or "Delta2" in names:
                raise ValueError(
                    "similar scenarios sweep 'Delta' (both qubits), not Delta1/Delta2"
                )
            if self.params.Delta1 != self.params.Delta2:
                raise ValueError("similar scenarios require Delta1 == Delta2")
        if self.scenario == "similar" and (self.params.J != 0.0 or "J" in names):
            raise ValueError("scenario 'similar' requires J = 0; use 'similar-J'")
        if self.scenario == "dissimilar" and (self.params.J != 0.0 or "J" in names):
            raise ValueError("the Ising coupling is only modeled for equal detunings")


def _apply(spec: SweepSpec, combo: dict[str, float]) -> tuple[SystemParams, InitialState]:
    p_fields: dict[str, float] = {}
    i_fields: dict[str, float] = {}
    for name, value in combo.items():
        if name == "Delta":
            p_fields["Delta1"] = value
            p_fields["Delta2"] = value
        elif name in ("theta", "phi"):
            i_fields[name] = value
        else:
            p_fields[name] = value
    p = dataclasses.replace(spec.params, **p_fields) if p_fields else spec.params
    init = dataclasses.replace(spec.init, **i_fields) if i_fields else spec.init
    return p, init


def _amplitude_fn(scenario: str):
    if scenario == "similar":
        return amplitudes_similar
    if scenario == "similar-J":
        return amplitudes_J
    return amplitudes_dissimilar


def _numeric_series(spec: SweepSpec, p: SystemParams, init: InitialState):
    tau_max = max(spec.tau_grid)
    if tau_max == 0.0:
        raise ValueError("numeric solvers need a positive final time")
    # subdivide the output spacing so records land exactly on the grid
    spacing = tau_max / (len(spec.tau_grid) - 1) if len(spec.tau_grid) > 1 else tau_max
    dt_target = spec.dt if spec.dt is not None else 0.25 * max_stable_dt(p)
    stride = max(1, math.ceil(spacing / dt_target - 1e-12))
    dt = spacing / stride
    if spec.solver == "volterra":
        return solve_volterra(p, init, tau_max, dt, record_stride=stride)
    if spec.solver == "dilated":
        return solve_dilated(p, init, tau_max, dt, record_stride=stride)
    return solve_discrete_modes(
        p, init, spec.n_modes, spec.cutoff, tau_max, dt, record_stride=stride
    )


def _rows_for_combo(spec: SweepSpec, combo_values: tuple[float, ...]) -> list[tuple[float, ...]]:
    combo = dict(zip((ax.name for ax in spec.axes), combo_values))

    # the stationary closed forms live on the closed r1 range and need no
    # dynamical parameters, so skip SystemParams entirely
    if spec.scenario in ("stationary", "stationary-max"):
        r1 = combo.get("r1", spec.params.r1)
        theta = combo.get("theta", spec.init.theta)
        phi = combo.get("phi", spec.init.phi)
        if spec.scenario == "stationary-max":
            theta, _ = optimize_stationary(r1, phi)
        return [combo_values + _amp_row(math.inf, _stationary_pair(r1, theta, phi))]

    p, init = _apply(spec, combo)
    rows = []

    if spec.solver == "analytic":
        fn = _amplitude_fn(spec.scenario)
        for tau in spec.tau_grid:
            rows.append(combo_values + _amp_row(tau, fn(tau, p, init)))
        return rows

    series = _numeric_series(spec, p, init)
    lookup = {round(t, 9): i for i, t in enumerate(series.tau)}
    for tau in spec.tau_grid:
        i = lookup.get(round(tau, 9))
        if i is None:
            i = int(np.argmin(np.abs(series.tau - tau)))
        amp = AmplitudePair(c1=complex(series.c1[i]), c2=complex(series.c2[i]))
        rows.append(combo_values + _amp_row(tau, amp))
    return rows


def _stationary_pair(r1: float, theta: float, phi: float) -> AmplitudePair:
    """Surviving amplitudes (r2 b-, -r1 b-); valid on the closed r1 range."""
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    bm = r2 * math.cos(0.5 * theta) - r1 * math.sin(0.5 * theta) * complex(
        math.cos(phi), math.sin(phi)
    )
    return AmplitudePair(c1=r2 * bm, c2=-r1 * bm)


def _amp_row(tau: float, amp: AmplitudePair) -> tuple[float, ...]:
    e = 4.0 * (abs(amp.c1) ** 2) * (abs(amp.c2) ** 2)
    c = concurrence(density_matrix(amp))
    return (tau, amp.c1.real, amp.c1.imag, amp.c2.real, amp.c2.imag, e, c)


def _verify_combo(spec: SweepSpec, combo_values: tuple[float, ...], rows) -> None:
    """Re-derive E/M at one grid point from an independent route."""
    combo = dict(zip((ax.name for ax in spec.axes), combo_values))
    tol = _VERIFY_TOL[spec.solver]

    if spec.scenario == "stationary":
        # no finite-time oracle reaches tau = inf: check the decayed closed form
        r1 = combo.get("r1", spec.params.r1)
        theta = combo.get("theta", spec.init.theta)
        phi = combo.get("phi", spec.init.phi)
        if r1 <= 0.0:
            return  # decoupled grid edge: the projection is exact by construction
        p = dataclasses.replace(spec.params, r1=r1)
        amp = amplitudes_similar(decay_time(p, tol=1e-8), p,
                                 InitialState(theta=theta, phi=phi))
        e_long = 4.0 * (abs(amp.c1) ** 2) * (abs(amp.c2) ** 2)
        e_stat = entanglement_stationary(r1, theta, phi)
        if abs(e_long - e_stat) > tol:
            raise RuntimeError(
                f"verify failed at {combo}: long-time E/M {e_long:.6f} vs "
                f"stationary {e_stat:.6f}"
            )
        return
    if spec.scenario == "stationary-max":
        return

    p, init = _apply(spec, combo)

    dt = 0.25 * max_stable_dt(p)
    tau_max = max(spec.tau_grid)
    if tau_max == 0.0:
        return
    oracle = solve_volterra(p, init, tau_max, dt)
    for row in rows:
        tau, e = row[len(combo_values)], row[len(combo_values) + 5]
        i = int(np.argmin(np.abs(oracle.tau - tau)))
        if abs(oracle.tau[i] - tau) > 2.0 * dt + 1e-9:
            continue
        if abs(e - oracle.e_over_m[i]) > tol:
            raise RuntimeError(
                f"verify failed at {combo}, tau = {tau:g}: E/M {e:.6f} vs "
                f"oracle {oracle.e_over_m[i]:.6f}"
            )


def resolve_threads(threads: int | None) -> int:
    """SIM_THREADS overrides the flag; default is the available parallelism."""
    env = os.environ.get("SIM_THREADS")
    if env is not None:
        try:
            threads = int(env)
        except ValueError as exc:
            raise ValueError(f"SIM_THREADS must be an integer, got {env!r}") from exc
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads


def _combos(spec: SweepSpec) -> list[tuple[float, ...]]:
    if not spec.axes:
        return [()]
    grids = [ax.grid for ax in spec.axes]
    if len(grids) == 1:
        return [(v,) for v in grids[0]]
    return [(a, b) for a in grids[0] for b in grids[1]]


def run_sweep(
    spec: SweepSpec,
    out_path: str | Path,
    threads: int | None = None,
    verify: bool = False,
    extra_header: dict[str, str] | None = None,
) -> Path:
    """Evaluate the sweep and write its CSV; returns the output path."""
    threads = resolve_threads(threads)
    combos = _combos(spec)

    if threads > 1 and len(combos) > 1:
        with multiprocessing.Pool(min(threads, len(combos))) as pool:
            chunks = pool.starmap(
                _rows_for_combo, [(spec, c) for c in combos], chunksize=8
            )
    else:
        chunks = [_rows_for_combo(spec, c) for c in combos]

    if verify:
        for i in range(0, len(combos), _VERIFY_EVERY):
            _verify_combo(spec, combos[i], chunks[i])

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="") as fh:
        _write_header(fh, spec, extra_header)
        names = [ax.name for ax in spec.axes]
        fh.write(",".join(names + list(COLUMNS)) + "\n")
        for rows in chunks:
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    return out_path


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return format(float(x), ".17g")


def _write_header(fh, spec: SweepSpec, extra: dict[str, str] | None) -> None:
    fh.write(f"# generator = cavitypair {__version__}\n")
    if extra:
        for key, value in extra.items():
            fh.write(f"# {key} = {value}\n")
    fh.write(f"# scenario = {spec.scenario}\n")
    fh.write(f"# solver = {spec.solver}\n")
    p, init = spec.params, spec.init
    for key, value in (
        ("R", p.R), ("Omega", p.Omega), ("Delta1", p.Delta1), ("Delta2", p.Delta2),
        ("DeltaL", p.DeltaL), ("J", p.J), ("r1", p.r1),
        ("theta", init.theta), ("phi", init.phi),
    ):
        fh.write(f"# {key} = {_fmt(value)}\n")
    for ax in spec.axes:
        fh.write(
            f"# axis {ax.name} = {_fmt(ax.grid[0])} .. {_fmt(ax.grid[-1])} "
            f"({len(ax.grid)} points)\n"
        )
    if spec.tau_grid:
        fh.write(
            f"# tau = {_fmt(spec.tau_grid[0])} .. {_fmt(spec.tau_grid[-1])} "
            f"({len(spec.tau_grid)} points)\n"
        )
    if spec.solver != "analytic":
        fh.write(f"# dt = {spec.dt if spec.dt is not None else 'auto'}\n")
    if spec.solver == "modes":
        fh.write(f"# n_modes = {spec.n_modes}\n")
        fh.write(f"# cutoff = {_fmt(spec.cutoff)}\n")


def run_figure(
    name: str,
    out_dir: str | Path = ".",
    threads: int | None = None,
    verify: bool = False,
) -> list[Path]:
    """Run one figure preset (or a whole figure group) into ``out_dir``."""
    from .presets import resolve

    paths = []
    for preset in resolve(name):
        out = Path(out_dir) / f"{preset.name}.csv"
        paths.append(
            run_sweep(
                preset.spec,
                out,
                threads=threads,
                verify=verify,
                extra_header={"preset": preset.name, "note": preset.note},
            )
        )
    return paths
