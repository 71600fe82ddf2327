"""Entanglement quantifiers.

The generator-sum measure works for pure states of any multipartite
dimension list; for the one-excitation two-qubit family produced by the
solvers it collapses to the closed forms 4|c1|^2|c2|^2 (dynamic) and
4 (r1 r2)^2 |b-|^4 (stationary), which equal the squared Wootters
concurrence of the reduced density matrix.
"""

from __future__ import annotations

import math

import numpy as np

from .model import AmplitudePair

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SY, _SY)


def generators(d: int) -> list[np.ndarray]:
    """The d^2 - 1 traceless Hermitian generators of SU(d).

    Ordered as symmetric pairs, antisymmetric pairs, then diagonal
    matrices; normalized so Tr(s_a s_b) = 2 delta_ab.  d = 2 gives the
    three Pauli matrices.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    mats: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            mats.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(diag).astype(complex) * math.sqrt(2.0 / (l * (l + 1))))
    return mats


def _reduced(psi: np.ndarray, dims: list[int], mu: int) -> np.ndarray:
    tensor = psi.reshape(dims)
    axes = [ax for ax in range(len(dims)) if ax != mu]
    return np.tensordot(tensor, tensor.conj(), axes=(axes, axes))


def measure_pure(state: np.ndarray, dims: list[int]) -> float:
    """Generator-sum entanglement of a pure state of subsystems ``dims``.

    Each subsystem contributes 2(d-1)/d - sum_k <s_k>^2; the value is
    cross-checked in place against the purity identity
    sum_k <s_k>^2 = 2 Tr(rho_mu^2) - 2/d.
    """
    psi = np.asarray(state, dtype=complex).ravel()
    if math.prod(dims) != psi.size:
        raise ValueError(f"dims {dims} do not match a state of length {psi.size}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"state norm {nrm} is not 1 within 1e-9")

    total = 0.0
    for mu, d in enumerate(dims):
        rho = _reduced(psi, list(dims), mu)
        gen_sum = 0.0
        for s in generators(d):
            gen_sum += float(np.trace(s @ rho).real) ** 2
        bracket = 2.0 * (d - 1) / d - gen_sum
        purity_bracket = 2.0 * (1.0 - float(np.trace(rho @ rho).real))
        if abs(bracket - purity_bracket) > 1e-10:
            raise RuntimeError(
                f"generator sum {bracket} disagrees with purity value "
                f"{purity_bracket} for subsystem {mu}"
            )
        total += bracket
    return total


def entanglement_dynamic(amp: AmplitudePair) -> float:
    """Per-subsystem-normalized entanglement 4|c1|^2|c2|^2 of the pair state."""
    return 4.0 * (abs(amp.c1) ** 2) * (abs(amp.c2) ** 2)


def entanglement_stationary(r1: float, theta: float, phi: float) -> float:
    """Stationary entanglement 4 (r1 r2)^2 |b-|^4 of the surviving component.

    Accepts the closed interval r1 in [0, 1]; both endpoints give 0.
    """
    if not 0.0 <= r1 <= 1.0:
        raise ValueError(f"r1 must lie in [0, 1], got {r1}")
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    bm2 = (
        r2 * r2 * math.cos(0.5 * theta) ** 2
        + r1 * r1 * math.sin(0.5 * theta) ** 2
        - r1 * r2 * math.sin(theta) * math.cos(phi)
    )
    return 4.0 * (r1 * r2) ** 2 * bm2 * bm2


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Computed from the square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy); no shortcut for special matrix shapes.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-9:
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise ValueError("density matrix trace differs from 1 beyond tolerance")
    if float(np.linalg.eigvalsh(rho)[0]) < -1e-8:
        raise ValueError("density matrix is not positive semidefinite")
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    ev = np.clip(np.linalg.eigvals(rho @ rho_tilde).real, 0.0, None)
    # suppress eigenvalue noise of order eps*|rho|^2 so exact zeros stay zero
    ev[ev < 1e-13 * ev.max(initial=0.0)] = 0.0
    mu = np.sort(np.sqrt(ev))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def _stationary_grid(r1: float, phi: float, thetas: np.ndarray) -> np.ndarray:
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    bm2 = (
        r2 * r2 * np.cos(0.5 * thetas) ** 2
        + r1 * r1 * np.sin(0.5 * thetas) ** 2
        - r1 * r2 * np.sin(thetas) * math.cos(phi)
    )
    return 4.0 * (r1 * r2) ** 2 * bm2 * bm2


def optimize_stationary(r1: float, phi: float) -> tuple[float, float]:
    """Maximize the stationary entanglement over theta in [0, pi].

    Deterministic: 1e-3 grid scan with golden-section refinement.  Value
    comparisons cannot place a quadratic peak better than sqrt(eps), so the
    refined point competes with the exact interior stationary angle of the
    underlying sinusoid (|b-|^2 = 1/2 + A cos(theta) + B sin(theta)) and
    with the domain edges.  Returns (theta_star, value).
    """
    if not 0.0 <= r1 <= 1.0:
        raise ValueError(f"r1 must lie in [0, 1], got {r1}")
    step = 1e-3
    thetas = np.arange(0.0, math.pi + step, step)
    thetas[-1] = math.pi
    values = _stationary_grid(r1, phi, thetas)
    best = int(np.argmax(values))
    lo = max(0.0, thetas[best] - step)
    hi = min(math.pi, thetas[best] + step)

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1 = entanglement_stationary(r1, x1, phi)
    f2 = entanglement_stationary(r1, x2, phi)
    while b - a > 1e-12:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = entanglement_stationary(r1, x2, phi)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = entanglement_stationary(r1, x1, phi)

    # exact candidates first: on the float plateau around a quadratic peak
    # they tie with the refined point and must win the tie
    candidates = []
    r2 = math.sqrt(max(0.0, 1.0 - r1 * r1))
    sin_amp = -r1 * r2 * math.cos(phi)
    cos_amp = 0.5 * (r2 * r2 - r1 * r1)
    if sin_amp != 0.0 or cos_amp != 0.0:
        peak = math.atan2(sin_amp, cos_amp)
        if 0.0 <= peak <= math.pi:
            candidates.append(peak)
    candidates += [0.0, math.pi, 0.5 * (a + b)]
    theta_star = max(candidates, key=lambda th: entanglement_stationary(r1, th, phi))
    return theta_star, entanglement_stationary(r1, theta_star, phi)
