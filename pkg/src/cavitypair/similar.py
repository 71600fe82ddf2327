"""Closed-form dynamics for qubits with equal transition frequencies.

When Delta1 = Delta2 the sub-radiant combination r2|EG> - r1|GE> decouples
from the cavity and only the orthogonal super-radiant component decays, with
a complex survival amplitude obtained in closed form from the exponential
memory kernel.  The qubit-qubit Ising variant shifts the kernel phase and
adds a global phase to the amplitudes; moduli are unaffected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import (
    AmplitudePair,
    InitialState,
    SystemParams,
    beta_coefficients,
    dress,
    initial_amplitudes,
)

#: |F*tau| below which the survival amplitude switches to its series limit
_SERIES_THRESHOLD = 1e-6


@dataclass(frozen=True)
class SurvivalParams:
    """Complex rates entering the survival amplitude of the decaying sector."""

    bigM: complex   # 1 - i(chi + DeltaL), loss units
    bigF: complex   # sqrt(bigM^2 - (R (1 + cos eta))^2), principal branch
    kappa: float    # effective coupling R^2 cos^4(eta/2) = ((R(1+cos eta))/2)^2


def survival_params(p: SystemParams, j_shift: bool = False) -> SurvivalParams:
    """Rates (M, F, kappa) for the survival amplitude; requires Delta1 = Delta2.

    With ``j_shift`` the Ising coupling moves the kernel phase:
    M -> 1 - i(chi + DeltaL - 4J).
    """
    if not p.similar:
        raise ValueError("survival amplitude requires Delta1 == Delta2")
    dq = dress(p.Delta1, p.Omega)
    nu = dq.chi + p.DeltaL - (4.0 * p.J if j_shift else 0.0)
    big_m = complex(1.0, -nu)
    rho = p.R * (1.0 + math.cos(dq.eta))
    big_f = cmath.sqrt(big_m * big_m - rho * rho)
    kappa = (0.5 * rho) ** 2
    return SurvivalParams(bigM=big_m, bigF=big_f, kappa=kappa)


def _sinhc(x: complex) -> complex:
    """sinh(x)/x, stable at x -> 0."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return cmath.sinh(x) / x


def _survival(tau: float, sp: SurvivalParams) -> complex:
    """exp(-M tau/2) (cosh(F tau/2) + (M/F) sinh(F tau/2)), branch-invariant.

    Written as cosh(x) + (M tau / 2) * sinhc(x) with x = F tau / 2 so the
    F -> 0 limit is regular, and split into the two decaying exponentials
    once |x| is large enough for cosh to overflow.
    """
    big_m, big_f = sp.bigM, sp.bigF
    x = 0.5 * big_f * tau
    if abs(x) < 0.5:
        return cmath.exp(-0.5 * big_m * tau) * (
            cmath.cosh(x) + (0.5 * big_m * tau) * _sinhc(x)
        )
    ratio = big_m / big_f
    slow = 0.5 * (big_f - big_m) * tau
    fast = 0.5 * (-big_f - big_m) * tau
    return 0.5 * (1.0 + ratio) * cmath.exp(slow) + 0.5 * (1.0 - ratio) * cmath.exp(fast)


def survival_amplitude(tau: float, p: SystemParams) -> complex:
    """Survival amplitude of the super-radiant component at scaled time tau."""
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    return _survival(tau, survival_params(p))


def survival_amplitude_J(tau: float, p: SystemParams) -> complex:
    """Survival amplitude with the Ising kernel shift; equals the plain one at J=0."""
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    return _survival(tau, survival_params(p, j_shift=True))


def _combine(p: SystemParams, init: InitialState, g: complex) -> AmplitudePair:
    beta_plus, beta_minus = beta_coefficients(p.r1, initial_amplitudes(init))
    c1 = p.r2 * beta_minus + p.r1 * g * beta_plus
    c2 = -p.r1 * beta_minus + p.r2 * g * beta_plus
    return AmplitudePair(c1=c1, c2=c2)


def amplitudes_similar(tau: float, p: SystemParams, init: InitialState) -> AmplitudePair:
    """Amplitudes at scaled time tau for equal transition frequencies."""
    return _combine(p, init, survival_amplitude(tau, p))


def amplitudes_J(tau: float, p: SystemParams, init: InitialState) -> AmplitudePair:
    """Amplitudes with Ising coupling, including the global phase exp(2i J tau)."""
    pair = _combine(p, init, survival_amplitude_J(tau, p))
    phase = cmath.exp(2.0j * p.J * tau)
    return AmplitudePair(c1=phase * pair.c1, c2=phase * pair.c2)


def stationary_amplitudes(p: SystemParams, init: InitialState) -> AmplitudePair:
    """Long-time amplitudes (r2 b-, -r1 b-): only the sub-radiant part survives.

    Independent of R, Omega, DeltaL and J.
    """
    if not p.similar:
        raise ValueError("stationary amplitudes require Delta1 == Delta2")
    _, beta_minus = beta_coefficients(p.r1, initial_amplitudes(init))
    return AmplitudePair(c1=p.r2 * beta_minus, c2=-p.r1 * beta_minus)


def decay_time(p: SystemParams, tol: float = 1e-8, j_shift: bool = False) -> float:
    """Scaled time after which |survival amplitude| stays below ``tol``.

    Computed from the decay rates of the two exponential branches rather
    than a fixed horizon; raises if the decaying sector does not decay
    (kappa = 0, i.e. the drive-dressed coupling vanishes).
    """
    sp = survival_params(p, j_shift=j_shift)
    if sp.kappa == 0.0:
        raise ValueError("survival amplitude does not decay (zero effective coupling)")
    s_slow = 0.5 * (sp.bigF - sp.bigM)
    s_fast = 0.5 * (-sp.bigF - sp.bigM)
    rate = -max(s_slow.real, s_fast.real)
    if rate <= 0.0:
        raise ValueError("survival amplitude does not decay for these parameters")
    if abs(sp.bigF) > 0.0:
        ratio = sp.bigM / sp.bigF
        bound = 0.5 * (abs(1.0 + ratio) + abs(1.0 - ratio))
    else:
        bound = 2.0
    tau = math.log(max(bound, 1.0) / tol) / rate
    # guard against an unusually large pre-exponential factor
    while abs(_survival(tau, sp)) >= tol:
        tau *= 1.5
    return tau
