"""Shared draws and step-size rules for the solver comparison tests."""

from __future__ import annotations

import math

import numpy as np

from cavitypair.model import InitialState, SystemParams
from cavitypair.volterra import max_stable_dt


def random_init(rng: np.random.Generator) -> InitialState:
    return InitialState(
        theta=float(rng.uniform(0.0, math.pi)),
        phi=float(rng.uniform(0.0, 2.0 * math.pi - 1e-12)),
    )


def random_similar_params(
    rng: np.random.Generator,
    r_coupling: float | None = None,
    scale: float = 10.0,
) -> SystemParams:
    """Equal-detuning parameters; R fixed per regime or drawn log-uniform."""
    if r_coupling is None:
        r_coupling = float(np.exp(rng.uniform(np.log(0.05), np.log(20.0))))
    delta = float(rng.uniform(0.0, scale))
    return SystemParams(
        R=r_coupling,
        Omega=float(rng.uniform(0.0, scale)),
        Delta1=delta,
        Delta2=delta,
        DeltaL=float(rng.uniform(0.0, scale)),
        r1=float(rng.uniform(0.15, 0.95)),
    )


def random_dissimilar_params(
    rng: np.random.Generator, r_coupling: float, scale: float = 10.0
) -> SystemParams:
    p = random_similar_params(rng, r_coupling, scale)
    d2 = float(rng.uniform(0.0, scale))
    while d2 == p.Delta1:
        d2 = float(rng.uniform(0.0, scale))
    return SystemParams(
        R=p.R, Omega=p.Omega, Delta1=p.Delta1, Delta2=d2,
        DeltaL=p.DeltaL, r1=p.r1,
    )


def oracle_dt(p: SystemParams) -> float:
    """Step giving the product-integration solver ~1e-6 accuracy or better."""
    bound = max_stable_dt(p)
    return bound / 16.0 if p.R > 1.0 else bound / 2.0


def max_amp_diff(c1a, c2a, c1b, c2b) -> float:
    return max(float(np.max(np.abs(np.asarray(c1a) - np.asarray(c1b)))),
               float(np.max(np.abs(np.asarray(c2a) - np.asarray(c2b)))))


def max_mod_diff(c1a, c2a, c1b, c2b) -> float:
    return max(
        float(np.max(np.abs(np.abs(np.asarray(c1a)) - np.abs(np.asarray(c1b))))),
        float(np.max(np.abs(np.abs(np.asarray(c2a)) - np.abs(np.asarray(c2b))))),
    )
