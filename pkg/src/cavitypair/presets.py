"""Built-in parameter presets for the figure-style sweeps.

Each preset pins every physical parameter, the swept axes and the time
grid as code-level constants, so regenerated CSV files are byte-identical
across runs.  Strong-coupling presets use tau in [0, 4] with 801 points,
weak-coupling presets tau in [0, 400] with 2001 points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import InitialState, SystemParams
from .sweep import Axis, SweepSpec

_SQ2 = 1.0 / math.sqrt(2.0)

_TAU_WEAK = tuple(400.0 * i / 2000 for i in range(2001))
_TAU_STRONG = tuple(4.0 * i / 800 for i in range(801))


@dataclass(frozen=True)
class FigurePreset:
    """A named, fully pinned sweep plus a rendering hint."""

    name: str
    spec: SweepSpec
    kind: str          # lines | heatmap
    note: str


def _stationary(name: str, phi: float, note: str) -> FigurePreset:
    return FigurePreset(
        name=name,
        spec=SweepSpec(
            scenario="stationary",
            solver="analytic",
            params=SystemParams(R=0.1),
            init=InitialState(theta=0.5 * math.pi, phi=phi),
            axes=(
                Axis.linspace("r1", 0.0, 1.0, 101),
                Axis.linspace("theta", 0.0, math.pi, 101),
            ),
            tau_grid=(),
        ),
        kind="heatmap",
        note=note,
    )


def _omega_curves(name: str, r: float, theta: float, tau_grid, note: str) -> FigurePreset:
    return FigurePreset(
        name=name,
        spec=SweepSpec(
            scenario="similar",
            solver="analytic",
            params=SystemParams(R=r),
            init=InitialState(theta=theta, phi=0.0),
            axes=(Axis.values("Omega", (0.0, 1.0, 5.0, 10.0)),),
            tau_grid=tau_grid,
        ),
        kind="lines",
        note=note,
    )


def _detuning_surface(name: str, r: float, delta_l: float, tau: float, note: str) -> FigurePreset:
    return FigurePreset(
        name=name,
        spec=SweepSpec(
            scenario="similar",
            solver="analytic",
            params=SystemParams(R=r, DeltaL=delta_l),
            init=InitialState(theta=0.5 * math.pi, phi=0.0),
            axes=(
                Axis.linspace("Omega", 0.0, 10.0, 51),
                Axis.linspace("Delta", 0.0, 10.0, 51),
            ),
            tau_grid=(tau,),
        ),
        kind="heatmap",
        note=note,
    )


def _laser_cavity_surface(
    name: str, r: float, d1: float, d2: float, tau: float, note: str
) -> FigurePreset:
    return FigurePreset(
        name=name,
        spec=SweepSpec(
            scenario="dissimilar",
            solver="analytic",
            params=SystemParams(R=r, Delta1=d1, Delta2=d2),
            init=InitialState(theta=0.5 * math.pi, phi=math.pi),
            axes=(
                Axis.linspace("Omega", 0.0, 10.0, 51),
                Axis.linspace("DeltaL", -10.0, 10.0, 51),
            ),
            tau_grid=(tau,),
        ),
        kind="heatmap",
        note=note,
    )


def _ising_curves(name: str, r: float, tau_grid, note: str) -> FigurePreset:
    # Omega = 0.5 keeps the three decay rates strictly ordered in J
    return FigurePreset(
        name=name,
        spec=SweepSpec(
            scenario="similar-J",
            solver="analytic",
            params=SystemParams(R=r, Omega=0.5),
            init=InitialState(theta=0.5 * math.pi, phi=0.0),
            axes=(Axis.values("J", (0.0, 1.0, 5.0)),),
            tau_grid=tau_grid,
        ),
        kind="lines",
        note=note,
    )


def _build() -> dict[str, FigurePreset]:
    presets = {}

    for name, phi, what in (
        ("fig2a", math.pi, "concurrence"),
        ("fig2b", math.pi, "generator measure"),
        ("fig2c", 0.0, "concurrence"),
        ("fig2d", 0.0, "generator measure"),
    ):
        presets[name] = _stationary(
            name, phi, f"stationary {what} surface vs (r1, theta), phi = {phi:g}"
        )

    presets["fig3"] = FigurePreset(
        name="fig3",
        spec=SweepSpec(
            scenario="stationary-max",
            solver="analytic",
            params=SystemParams(R=0.1),
            init=InitialState(theta=0.0, phi=0.0),
            axes=(
                Axis.values("phi", (0.0, math.pi)),
                Axis.linspace("r1", 0.0, 1.0, 201),
            ),
            tau_grid=(),
        ),
        kind="lines",
        note="best-over-theta stationary entanglement vs r1 for phi in {0, pi}",
    )

    presets["fig4a"] = _omega_curves(
        "fig4a", 0.1, 0.5 * math.pi, _TAU_WEAK,
        "drive dependence, entangled start, weak coupling",
    )
    presets["fig4b"] = _omega_curves(
        "fig4b", 10.0, 0.5 * math.pi, _TAU_STRONG,
        "drive dependence, entangled start, strong coupling",
    )
    presets["fig5a"] = _omega_curves(
        "fig5a", 0.1, 0.0, _TAU_WEAK,
        "drive dependence, separable start, weak coupling",
    )
    presets["fig5b"] = _omega_curves(
        "fig5b", 10.0, 0.0, _TAU_STRONG,
        "drive dependence, separable start, strong coupling",
    )

    presets["fig6a"] = _detuning_surface(
        "fig6a", 0.1, 0.0, 400.0, "late entanglement vs (Omega, Delta), weak coupling"
    )
    presets["fig6b"] = _detuning_surface(
        "fig6b", 10.0, 0.0, 4.0, "late entanglement vs (Omega, Delta), strong coupling"
    )
    presets["fig7a"] = _detuning_surface(
        "fig7a", 0.1, 1.5, 400.0, "late entanglement vs (Omega, Delta), DeltaL = 1.5"
    )
    presets["fig7b"] = _detuning_surface(
        "fig7b", 0.1, 3.0, 400.0, "late entanglement vs (Omega, Delta), DeltaL = 3"
    )

    presets["fig8a"] = _ising_curves(
        "fig8a", 0.1, _TAU_WEAK, "Ising-coupling dependence, weak coupling"
    )
    presets["fig8b"] = _ising_curves(
        "fig8b", 10.0, _TAU_STRONG, "Ising-coupling dependence, strong coupling"
    )

    presets["fig9a"] = _laser_cavity_surface(
        "fig9a", 0.1, 0.0, 1.0, 400.0,
        "late entanglement vs (Omega, DeltaL), unequal detunings, weak coupling",
    )
    presets["fig9b"] = _laser_cavity_surface(
        "fig9b", 0.1, -1.0, 1.0, 400.0,
        "late entanglement vs (Omega, DeltaL), opposite detunings, weak coupling",
    )
    presets["fig10a"] = _laser_cavity_surface(
        "fig10a", 10.0, 0.0, 10.0, 4.0,
        "late entanglement vs (Omega, DeltaL), unequal detunings, strong coupling",
    )
    presets["fig10b"] = _laser_cavity_surface(
        "fig10b", 10.0, -10.0, 10.0, 4.0,
        "late entanglement vs (Omega, DeltaL), opposite detunings, strong coupling",
    )
    return presets


PRESETS: dict[str, FigurePreset] = _build()

#: bare figure ids expand to all of their panels
GROUPS: dict[str, tuple[str, ...]] = {
    "fig2": ("fig2a", "fig2b", "fig2c", "fig2d"),
    "fig3": ("fig3",),
    "fig4": ("fig4a", "fig4b"),
    "fig5": ("fig5a", "fig5b"),
    "fig6": ("fig6a", "fig6b"),
    "fig7": ("fig7a", "fig7b"),
    "fig8": ("fig8a", "fig8b"),
    "fig9": ("fig9a", "fig9b"),
    "fig10": ("fig10a", "fig10b"),
}


def resolve(name: str) -> tuple[FigurePreset, ...]:
    """Presets for an exact panel id or a bare figure id."""
    if name in PRESETS:
        return (PRESETS[name],)
    if name in GROUPS:
        return tuple(PRESETS[p] for p in GROUPS[name])
    known = ", ".join(sorted(GROUPS) + sorted(PRESETS))
    raise ValueError(f"unknown figure preset '{name}' (known: {known})")
