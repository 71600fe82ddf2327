import math

import numpy as np
import pytest

from helpers import max_amp_diff, max_mod_diff, oracle_dt, random_init, random_similar_params, random_dissimilar_params

from cavitypair.dissimilar import (
    _exp_sum,
    amplitudes_dissimilar,
    cubic_coeffs,
    propagators,
    solve_cubic,
)
from cavitypair.model import InitialState, SystemParams, initial_amplitudes
from cavitypair.similar import amplitudes_similar
from cavitypair.volterra import solve_volterra

SQ2 = 1.0 / math.sqrt(2.0)


def _poly(s, A, B, C):
    return ((s + A) * s + B) * s + C


class TestCubicCoeffs:
    def test_equal_detunings_kill_constant_term(self):
        p = SystemParams(R=2.0, Omega=1.5, Delta1=0.7, Delta2=0.7, DeltaL=0.4)
        cc = cubic_coeffs(p)
        assert cc.C1 == 0.0 and cc.C2 == 0.0
        assert cc.a1 == cc.A1 and cc.a2 == cc.A2
        assert cc.c1 == cc.c2

    def test_roots_satisfy_cubic(self):
        p = SystemParams(R=1.0, Omega=0.0, Delta1=0.0, Delta2=1.0, DeltaL=0.0, r1=SQ2)
        cc = cubic_coeffs(p)
        for A, B, C in ((cc.A1, cc.B1, cc.C1), (cc.A2, cc.B2, cc.C2)):
            for s in solve_cubic(A, B, C):
                assert abs(_poly(s, A, B, C)) < 1e-10

    def test_decoupled_first_qubit_limit(self):
        tiny = 1e-9
        p = SystemParams(R=1.3, Omega=0.8, Delta1=0.2, Delta2=1.1, DeltaL=0.5, r1=tiny)
        cc = cubic_coeffs(p)
        assert abs(cc.c1) < 2.0 * tiny * p.R * p.R
        # the cross-coupling entry of the s-coefficient reduces to the
        # second qubit's own weight
        d2 = p.dressed()[1]
        k2 = p.R * p.R * d2.cos_half_sq**2
        expected_b2 = (p.dressed()[0].chi - d2.chi) * complex(d2.chi + p.DeltaL, 1.0) + 0.0
        assert abs(cc.b2 - expected_b2) < 1e-12


class TestSolveCubic:
    def test_known_factorization(self):
        roots = sorted(solve_cubic(-6.0, 11.0, -6.0), key=lambda z: z.real)
        assert np.allclose(roots, [1.0, 2.0, 3.0], atol=1e-10)

    def test_triple_zero(self):
        assert all(abs(s) < 1e-12 for s in solve_cubic(0.0, 0.0, 0.0))

    def test_against_companion_matrix(self):
        rng = np.random.default_rng(20)
        for _ in range(100):
            A, B, C = (complex(*rng.normal(scale=5.0, size=2)) for _ in range(3))
            mine = list(solve_cubic(A, B, C))
            oracle = list(np.roots([1.0, A, B, C]))
            assert _multiset_distance(mine, oracle) < 1e-8

    def test_root_sum(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            A, B, C = (complex(*rng.normal(scale=3.0, size=2)) for _ in range(3))
            s1, s2, s3 = solve_cubic(A, B, C)
            assert abs((s1 + s2 + s3) + A) < 1e-9 * max(1.0, abs(A))


def _multiset_distance(a: list[complex], b: list[complex]) -> float:
    worst = 0.0
    remaining = list(b)
    for z in a:
        j = min(range(len(remaining)), key=lambda i: abs(z - remaining[i]))
        worst = max(worst, abs(z - remaining[j]))
        remaining.pop(j)
    return worst


class TestPropagators:
    def test_initial_value_theorem(self):
        rng = np.random.default_rng(22)
        for _ in range(30):
            p = random_dissimilar_params(rng, float(rng.uniform(0.1, 5.0)), scale=5.0)
            g11, g12, g21, g22 = propagators(0.0, p)
            assert abs(g11 - 1.0) < 1e-10 and abs(g22 - 1.0) < 1e-10
            assert abs(g12) < 1e-10 and abs(g21) < 1e-10

    def test_reduction_to_equal_detunings(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            p = random_similar_params(rng)
            init = random_init(rng)
            tau = float(rng.uniform(0.0, 20.0))
            a_sim = amplitudes_similar(tau, p, init)
            a_dis = amplitudes_dissimilar(tau, p, init)
            assert max_amp_diff(a_sim.c1, a_sim.c2, a_dis.c1, a_dis.c2) < 1e-10

    def test_moduli_against_oracle_both_regimes(self):
        rng = np.random.default_rng(24)
        for r_coupling in (0.1, 10.0):
            for _ in range(20):
                p = random_dissimilar_params(rng, r_coupling)
                init = random_init(rng)
                tau = float(rng.uniform(0.5, 8.0))
                ts = solve_volterra(p, init, tau, oracle_dt(p))
                amp = amplitudes_dissimilar(float(ts.tau[-1]), p, init)
                assert max_mod_diff(ts.c1[-1], ts.c2[-1], amp.c1, amp.c2) < 1e-4

    def test_full_complex_agreement_with_oracle(self):
        # the propagator formulas carry no hidden frame phase: the complex
        # amplitudes themselves match the quadrature oracle
        rng = np.random.default_rng(25)
        for _ in range(10):
            p = random_dissimilar_params(rng, 0.5, scale=3.0)
            init = random_init(rng)
            ts = solve_volterra(p, init, 6.0, oracle_dt(p))
            amp = amplitudes_dissimilar(float(ts.tau[-1]), p, init)
            assert max_amp_diff(ts.c1[-1], ts.c2[-1], amp.c1, amp.c2) < 1e-5

    def test_boundedness(self):
        rng = np.random.default_rng(26)
        for _ in range(20):
            p = random_dissimilar_params(rng, float(rng.uniform(0.1, 10.0)))
            init = random_init(rng)
            for tau in np.linspace(0.0, 20.0, 101):
                amp = amplitudes_dissimilar(float(tau), p, init)
                assert amp.norm2 <= 1.0 + 1e-9

    def test_spectator_qubit_stays_empty(self):
        # r1 -> 0 removes the cross coupling: an excitation of qubit 1 never
        # reaches qubit 2
        p = SystemParams(R=1.0, Omega=0.7, Delta1=0.3, Delta2=1.4, DeltaL=0.2, r1=1e-8)
        init = InitialState(theta=0.0, phi=0.0)
        for tau in (0.5, 2.0, 10.0):
            amp = amplitudes_dissimilar(tau, p, init)
            assert abs(amp.c2) < 1e-7

    def test_negative_tau_rejected(self):
        with pytest.raises(ValueError):
            propagators(-1.0, SystemParams(R=1.0))


class TestConfluentEvaluation:
    def test_continuity_through_root_collision(self):
        # move two roots together through the switching threshold; the
        # exponential sum must not jump
        v = complex(-0.8, 1.1)
        u = complex(-0.3, -0.4)
        numer = (complex(1.0), complex(0.5, 0.2), complex(-0.1, 0.3))
        tau = 1.0
        # dense sampling: smooth variation per step stays well below the
        # jump threshold while the path crosses the 1e-6 switch
        gaps = np.logspace(-8, -5, 301)
        values = []
        for eps in gaps:
            roots = (u, u + eps * complex(0.6, 0.8), v)
            coeff = [-(roots[0] + roots[1] + roots[2]),
                     roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2],
                     -roots[0] * roots[1] * roots[2]]
            recovered = solve_cubic(*coeff)
            assert _multiset_distance(list(roots), list(recovered)) < 1e-7
            values.append(_exp_sum(roots, numer, tau))
        values = np.array(values)
        assert np.max(np.abs(np.diff(values))) < 1e-6

    def test_triple_collision(self):
        u = complex(-0.5, 0.3)
        numer = (complex(1.0), complex(0.0), complex(0.0))
        exact = _exp_sum((u, u + 1e-12, u - 1e-12), numer, 2.0)
        spread = _exp_sum((u, u + 1e-4, u - 1e-4), numer, 2.0)
        assert abs(exact - spread) < 1e-6
