"""Parameter model, dressed-state transform, initial state and density matrix.

Unit conventions used throughout the package:

- The cavity loss rate is the unit of frequency; every rate-like parameter
  (R, Omega, Delta1, Delta2, DeltaL, J) is expressed in those units and the
  loss rate itself is 1 internally.
- Time is the dimensionless scaled time tau = (loss rate) * t.
- The total coupling normalization is fixed so that the two per-qubit
  coupling fractions are exactly (r1, r2) with r1^2 + r2^2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: tolerated excess of |c1|^2 + |c2|^2 above 1 (rest is photon/ground weight)
NORM_TOL = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """All physical rates of the driven two-qubit/cavity system.

    Every frequency is in units of the cavity loss rate.
    """

    R: float                 # collective coupling (vacuum Rabi / loss)
    Omega: float = 0.0       # classical Rabi frequency, real and >= 0
    Delta1: float = 0.0      # qubit 1 - drive detuning
    Delta2: float = 0.0      # qubit 2 - drive detuning
    DeltaL: float = 0.0      # drive - cavity detuning
    J: float = 0.0           # qubit-qubit Ising coupling (0 when absent)
    r1: float = 1.0 / math.sqrt(2.0)  # relative coupling of qubit 1

    def __post_init__(self):
        if not self.R > 0.0:
            raise ValueError(f"R must be positive, got {self.R}")
        if self.Omega < 0.0:
            raise ValueError(f"Omega must be >= 0, got {self.Omega}")
        # r1 = 1 is the single-qubit limit (qubit 2 decoupled); r1 = 0 is
        # excluded so qubit 1 always couples.
        if not 0.0 < self.r1 <= 1.0:
            raise ValueError(f"r1 must lie in (0, 1], got {self.r1}")

    @property
    def r2(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.r1 * self.r1))

    @property
    def similar(self) -> bool:
        """True when both qubits share one transition frequency."""
        return self.Delta1 == self.Delta2

    def dressed(self) -> tuple[DressedQubit, DressedQubit]:
        return dress(self.Delta1, self.Omega), dress(self.Delta2, self.Omega)


@dataclass(frozen=True)
class DressedQubit:
    """Dressed splitting chi and mixing angle eta of one driven qubit."""

    chi: float   # sqrt(Delta^2 + 4 Omega^2), >= 0
    eta: float   # mixing angle in [0, pi]

    @property
    def cos_half_sq(self) -> float:
        """cos^2(eta/2), the weight of the dressed raising operator."""
        return math.cos(0.5 * self.eta) ** 2


def dress(delta: float, omega: float) -> DressedQubit:
    """Dressed-state parameters of a single qubit under classical driving.

    The degenerate input delta = omega = 0 returns (chi=0, eta=0), i.e. the
    undriven bare basis.
    """
    if omega < 0.0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    chi = math.hypot(delta, 2.0 * omega)
    eta = math.atan2(2.0 * omega, delta)
    return DressedQubit(chi=chi, eta=eta)


@dataclass(frozen=True)
class InitialState:
    """Bloch-like angles of the initial one-excitation superposition."""

    theta: float          # in [0, pi]
    phi: float = 0.0      # in [0, 2*pi)

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class AmplitudePair:
    """Complex amplitudes of |EG> and |GE> at one instant."""

    c1: complex
    c2: complex

    def __post_init__(self):
        if self.norm2 > 1.0 + NORM_TOL:
            raise ValueError(
                f"|c1|^2 + |c2|^2 = {self.norm2} exceeds 1 beyond tolerance"
            )

    @property
    def norm2(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2


def initial_amplitudes(init: InitialState) -> AmplitudePair:
    """Amplitudes (cos(theta/2), sin(theta/2) e^{i phi}) of the initial state."""
    c1 = complex(math.cos(0.5 * init.theta), 0.0)
    c2 = math.sin(0.5 * init.theta) * complex(
        math.cos(init.phi), math.sin(init.phi)
    )
    return AmplitudePair(c1=c1, c2=c2)


def beta_coefficients(r1: float, amp0: AmplitudePair) -> tuple[complex, complex]:
    """Project an amplitude pair onto the decaying / decoherence-free pair.

    Returns (beta_plus, beta_minus) where beta_minus is the overlap with the
    sub-radiant combination r2|EG> - r1|GE> and beta_plus with its orthogonal
    super-radiant partner.  The map is unitary: |b+|^2 + |b-|^2 equals the
    input norm.
    """
    if not 0.0 < r1 <= 1.0:
        raise ValueError(f"r1 must lie in (0, 1], got {r1}")
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    beta_plus = r1 * amp0.c1 + r2 * amp0.c2
    beta_minus = r2 * amp0.c1 - r1 * amp0.c2
    return beta_plus, beta_minus


def density_matrix(amp: AmplitudePair) -> np.ndarray:
    """4x4 two-qubit density matrix in the basis (|EE>, |EG>, |GE>, |GG>).

    The |EE> row/column is identically zero in the one-excitation sector;
    the missing population 1 - |c1|^2 - |c2|^2 sits on |GG>.
    """
    n2 = amp.norm2
    if n2 > 1.0 + NORM_TOL:
        raise ValueError(f"amplitude norm {n2} exceeds 1; upstream solver blew up")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = abs(amp.c1) ** 2
    rho[2, 2] = abs(amp.c2) ** 2
    rho[1, 2] = amp.c1 * np.conj(amp.c2)
    rho[2, 1] = np.conj(rho[1, 2])
    rho[3, 3] = max(0.0, 1.0 - n2)
    return rho
