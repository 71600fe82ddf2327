"""Propagators for qubits with different transition frequencies.

The Laplace transforms of the two amplitudes are rational functions with a
cubic denominator per qubit.  The time-domain propagator matrix G_ij is the
corresponding sum of three exponentials; near-coincident cubic roots are
handled with confluent (divided-difference) evaluation, which stays finite
and smooth through root collisions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import AmplitudePair, InitialState, SystemParams, initial_amplitudes

#: pairwise root distance below which the exponential sums switch to
#: divided-difference form
_CONFLUENT_TOL = 1e-6


@dataclass(frozen=True)
class CubicCoeffs:
    """Numerator and denominator coefficients of both rational propagators.

    For qubit j the diagonal propagator is (s^2 + a_j s + b_j) / q_j(s) and
    the cross propagator is c_j / q_j(s), with q_j(s) = s^3 + A_j s^2 +
    B_j s + C_j.  By construction a_j = A_j and c_1 = c_2.
    """

    a1: complex
    b1: complex
    c1: complex
    A1: complex
    B1: complex
    C1: complex
    a2: complex
    b2: complex
    c2: complex
    A2: complex
    B2: complex
    C2: complex


def cubic_coeffs(p: SystemParams) -> CubicCoeffs:
    """Assemble the rational-propagator coefficients from the system rates."""
    d1, d2 = p.dressed()
    chi1, chi2 = d1.chi, d2.chi
    co1, co2 = d1.cos_half_sq, d2.cos_half_sq
    rr = p.R * p.R  # (collective coupling)^2 in loss units
    k1 = rr * p.r1 * p.r1 * co1 * co1
    k2 = rr * p.r2 * p.r2 * co2 * co2
    cross = -rr * p.r1 * p.r2 * co1 * co2

    a1 = complex(1.0, -(2.0 * chi1 - chi2 + p.DeltaL))
    a2 = complex(1.0, -(2.0 * chi2 - chi1 + p.DeltaL))
    b1 = (chi2 - chi1) * complex(chi1 + p.DeltaL, 1.0) + k2
    b2 = (chi1 - chi2) * complex(chi2 + p.DeltaL, 1.0) + k1
    big_b = complex(k1 + k2)
    c_1 = -1.0j * k1 * (chi1 - chi2)
    c_2 = -1.0j * k2 * (chi2 - chi1)
    return CubicCoeffs(
        a1=a1, b1=b1, c1=cross, A1=a1, B1=b1 - k2 + big_b, C1=c_1,
        a2=a2, b2=b2, c2=cross, A2=a2, B2=b2 - k1 + big_b, C2=c_2,
    )


def solve_cubic(A: complex, B: complex, C: complex) -> tuple[complex, complex, complex]:
    """Roots of s^3 + A s^2 + B s + C by Cardano plus a Newton polish.

    Repeated roots come back as numerically coincident values.
    """
    # depressed cubic z^3 + p z + q with s = z - A/3
    shift = A / 3.0
    pc = B - A * A / 3.0
    qc = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    disc = cmath.sqrt((0.5 * qc) ** 2 + (pc / 3.0) ** 3)
    # pick the larger-magnitude cube-root argument for stability
    u3 = -0.5 * qc + disc
    if abs(u3) < abs(-0.5 * qc - disc):
        u3 = -0.5 * qc - disc
    if u3 == 0.0:
        z0 = (-qc) ** (1.0 / 3.0) if qc == 0.0 else _cbrt(-qc)
        w = complex(-0.5, 0.5 * math.sqrt(3.0))
        roots = [z0 - shift, z0 * w - shift, z0 * w.conjugate() - shift]
        return tuple(_polish(r, A, B, C) for r in roots)
    u = _cbrt(u3)
    v = -pc / (3.0 * u)
    w = complex(-0.5, 0.5 * math.sqrt(3.0))
    zs = (u + v, u * w + v * w.conjugate(), u * w.conjugate() + v * w)
    return tuple(_polish(z - shift, A, B, C) for z in zs)


def _cbrt(z: complex) -> complex:
    r, phi = cmath.polar(z)
    return cmath.rect(r ** (1.0 / 3.0), phi / 3.0)


def _polish(s: complex, A: complex, B: complex, C: complex) -> complex:
    for _ in range(3):
        f = ((s + A) * s + B) * s + C
        df = (3.0 * s + 2.0 * A) * s + B
        if df == 0.0:
            break
        step = f / df
        s -= step
        if abs(step) <= 1e-16 * max(1.0, abs(s)):
            break
    return s


def _poly_val(coeffs: tuple[complex, complex, complex], s: complex) -> complex:
    """Numerator n2 s^2 + n1 s + n0 evaluated at s."""
    n2, n1, n0 = coeffs
    return (n2 * s + n1) * s + n0


def _exp_sum(
    roots: tuple[complex, complex, complex],
    numer: tuple[complex, complex, complex],
    tau: float,
) -> complex:
    """Inverse Laplace transform of numer(s) / prod(s - roots) at time tau.

    Uses the residue (partial-fraction) sum for well-separated roots and
    confluent divided differences of g(s) = numer(s) exp(s tau) otherwise.
    """
    s1, s2, s3 = roots
    d12, d13, d23 = s1 - s2, s1 - s3, s2 - s3
    if min(abs(d12), abs(d13), abs(d23)) > _CONFLUENT_TOL:
        return (
            _poly_val(numer, s1) * cmath.exp(s1 * tau) / (d12 * d13)
            - _poly_val(numer, s2) * cmath.exp(s2 * tau) / (d12 * d23)
            + _poly_val(numer, s3) * cmath.exp(s3 * tau) / (d13 * d23)
        )
    return _divided_difference(roots, numer, tau)


def _g_derivatives(
    numer: tuple[complex, complex, complex], s: complex, tau: float
) -> tuple[complex, complex, complex]:
    """g, g', g'' of g(s) = numer(s) exp(s tau) at one node."""
    n2, n1, _ = numer
    e = cmath.exp(s * tau)
    pv = _poly_val(numer, s)
    dp = 2.0 * n2 * s + n1
    g = pv * e
    g1 = (dp + tau * pv) * e
    g2 = (2.0 * n2 + 2.0 * tau * dp + tau * tau * pv) * e
    return g, g1, g2


def _divided_difference(
    roots: tuple[complex, complex, complex],
    numer: tuple[complex, complex, complex],
    tau: float,
) -> complex:
    """Second divided difference of g(s) = numer(s) exp(s tau) over the roots.

    Coincident nodes (within the confluent tolerance) are merged to their
    mean and resolved with derivatives: g[u,u] = g'(u), g[u,u,u] = g''(u)/2.
    """
    s1, s2, s3 = roots
    pairs = [
        (abs(s1 - s2), 0),
        (abs(s1 - s3), 1),
        (abs(s2 - s3), 2),
    ]
    dist, which = min(pairs)
    if dist > _CONFLUENT_TOL:
        pass  # unreachable from _exp_sum, kept for direct calls
    if which == 0:
        u, v = 0.5 * (s1 + s2), s3
    elif which == 1:
        u, v = 0.5 * (s1 + s3), s2
    else:
        u, v = 0.5 * (s2 + s3), s1
    if abs(u - v) <= _CONFLUENT_TOL:
        # all three roots effectively coincide
        w = (s1 + s2 + s3) / 3.0
        _, _, g2 = _g_derivatives(numer, w, tau)
        return 0.5 * g2
    gu, gu1, _ = _g_derivatives(numer, u, tau)
    gv, _, _ = _g_derivatives(numer, v, tau)
    first = (gu - gv) / (u - v)      # g[u, v]
    return (gu1 - first) / (u - v)   # g[u, u, v]


def propagators(
    tau: float, p: SystemParams
) -> tuple[complex, complex, complex, complex]:
    """Propagator matrix (G11, G12, G21, G22) at scaled time tau.

    G_jj(0) = 1 and G_ji(0) = 0 by the initial-value theorem.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    cc = cubic_coeffs(p)
    roots1 = solve_cubic(cc.A1, cc.B1, cc.C1)
    roots2 = solve_cubic(cc.A2, cc.B2, cc.C2)
    one = complex(1.0)
    g11 = _exp_sum(roots1, (one, cc.a1, cc.b1), tau)
    g12 = _exp_sum(roots1, (0.0j, 0.0j, cc.c1), tau)
    g21 = _exp_sum(roots2, (0.0j, 0.0j, cc.c2), tau)
    g22 = _exp_sum(roots2, (one, cc.a2, cc.b2), tau)
    return g11, g12, g21, g22


def amplitudes_dissimilar(
    tau: float, p: SystemParams, init: InitialState
) -> AmplitudePair:
    """Amplitudes at scaled time tau for arbitrary detunings."""
    g11, g12, g21, g22 = propagators(tau, p)
    amp0 = initial_amplitudes(init)
    return AmplitudePair(
        c1=g11 * amp0.c1 + g12 * amp0.c2,
        c2=g21 * amp0.c1 + g22 * amp0.c2,
    )
