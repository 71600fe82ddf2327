import math

import numpy as np
import pytest

from helpers import max_amp_diff, max_mod_diff, oracle_dt, random_init, random_similar_params

from cavitypair.model import InitialState, SystemParams
from cavitypair.similar import amplitudes_similar, survival_amplitude
from cavitypair.volterra import (
    kernel_spec,
    max_stable_dt,
    mode_grid,
    solve_dilated,
    solve_discrete_modes,
    solve_volterra,
    solve_volterra_direct,
)

SQ2 = 1.0 / math.sqrt(2.0)
SUBRADIANT = InitialState(theta=math.pi / 2, phi=math.pi)


class TestKernelSpec:
    def test_rank_one_weights(self):
        rng = np.random.default_rng(30)
        for _ in range(50):
            p = random_similar_params(rng)
            ks = kernel_spec(p)
            assert ks.k11 * ks.k22 == pytest.approx(ks.k12**2, rel=1e-12, abs=1e-15)
            assert ks.w2 == pytest.approx(p.R * p.R, rel=1e-15)

    def test_ising_needs_equal_detunings(self):
        with pytest.raises(ValueError):
            kernel_spec(SystemParams(R=1.0, Delta1=0.0, Delta2=1.0, J=0.5))

    def test_dt_precondition(self):
        p = SystemParams(R=10.0, Omega=10.0)
        with pytest.raises(ValueError):
            solve_volterra(p, SUBRADIANT, 1.0, 2.0 * max_stable_dt(p))
        with pytest.raises(ValueError):
            solve_volterra(p, SUBRADIANT, 1.0, -1e-3)


class TestProductIntegration:
    def test_recursion_equals_explicit_history(self):
        # the O(1)-per-step evaluation is the same trapezoid sum as the
        # O(N^2) explicit one, to rounding
        rng = np.random.default_rng(31)
        for _ in range(5):
            p = random_similar_params(rng, float(rng.uniform(0.2, 3.0)), scale=3.0)
            init = random_init(rng)
            a = solve_volterra(p, init, 3.0, 1e-3, record_stride=100)
            b = solve_volterra_direct(p, init, 3.0, 1e-3, record_stride=100)
            assert max_amp_diff(a.c1, a.c2, b.c1, b.c2) < 1e-12

    def test_second_order_convergence(self):
        p = SystemParams(R=1.0, Omega=1.0, Delta1=0.5, Delta2=0.5, DeltaL=0.3, r1=0.6)
        init = InitialState(theta=1.1, phi=2.0)
        exact = amplitudes_similar(5.0, p, init)
        errors = []
        for dt in (4e-3, 2e-3, 1e-3):
            ts = solve_volterra(p, init, 5.0, dt)
            errors.append(max_amp_diff(ts.c1[-1], ts.c2[-1], exact.c1, exact.c2))
        assert 3.0 < errors[0] / errors[1] < 5.0
        assert 3.0 < errors[1] / errors[2] < 5.0

    def test_matches_closed_form_at_millistep(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            p = random_similar_params(rng, float(rng.uniform(0.05, 2.0)), scale=2.0)
            init = random_init(rng)
            ts = solve_volterra(p, init, 5.0, 1e-3)
            amp = amplitudes_similar(5.0, p, init)
            assert max_amp_diff(ts.c1[-1], ts.c2[-1], amp.c1, amp.c2) < 1e-5

    def test_subradiant_fixed_point(self):
        rng = np.random.default_rng(33)
        for r_coupling in (0.1, 10.0):
            p = random_similar_params(rng, r_coupling)
            p = SystemParams(R=p.R, Omega=p.Omega, Delta1=p.Delta1,
                             Delta2=p.Delta2, DeltaL=p.DeltaL, r1=SQ2)
            ts = solve_volterra(p, SUBRADIANT, 20.0, oracle_dt(p))
            assert np.max(np.abs(ts.e_over_m - 1.0)) < 1e-6


class TestDilation:
    def test_agreement_with_product_integration(self):
        rng = np.random.default_rng(34)
        for _ in range(20):
            p = random_similar_params(rng, float(rng.uniform(0.05, 3.0)), scale=3.0)
            init = random_init(rng)
            tau = float(rng.uniform(0.5, 10.0))
            dt = oracle_dt(p)
            a = solve_volterra(p, init, tau, dt)
            b = solve_dilated(p, init, tau, dt)
            assert max_amp_diff(a.c1, a.c2, b.c1, b.c2) < 1e-6

    def test_collapse_revival_oscillations(self):
        # strong-coupling modulus revivals match the closed form
        p = SystemParams(R=10.0, Omega=0.0, Delta1=0.0, Delta2=0.0, DeltaL=0.0, r1=SQ2)
        init = InitialState(theta=2.0 * math.atan2(p.r2, p.r1), phi=0.0)
        ts = solve_dilated(p, init, 4.0, oracle_dt(p))
        g_num = ts.c1 / p.r1
        g_ana = np.array([survival_amplitude(float(t), p) for t in ts.tau])
        assert np.max(np.abs(g_num - g_ana)) < 1e-5
        mods = np.abs(g_ana)
        assert mods.min() < 0.02 and np.max(mods[200:]) > 0.5

    def test_ising_shift_matches_closed_form(self):
        from cavitypair.similar import amplitudes_J

        p = SystemParams(R=0.1, Omega=1.0, J=5.0, r1=0.6)
        init = InitialState(theta=1.0, phi=0.3)
        dt = 0.01 / (1.0 + 4.0 * p.J)
        ts = solve_dilated(p, init, 8.0, dt)
        amp = amplitudes_J(float(ts.tau[-1]), p, init)
        assert max_mod_diff(ts.c1[-1], ts.c2[-1], amp.c1, amp.c2) < 1e-5


class TestDiscreteModes:
    def test_grid_validation(self):
        p = SystemParams(R=1.0)
        with pytest.raises(ValueError):
            mode_grid(p, 100, 100.0)
        with pytest.raises(ValueError):
            mode_grid(p, 99, 100.0)
        with pytest.raises(ValueError):
            mode_grid(p, 2001, 40.0)

    def test_weight_sum_converges(self):
        p = SystemParams(R=1.0)
        _, g = mode_grid(p, 4001, 200.0)
        assert abs(float(np.sum(g**2)) - 1.0) < 0.02

    def test_norm_conservation(self):
        p = SystemParams(R=1.0, Omega=0.0, Delta1=0.0, Delta2=0.0, DeltaL=0.0)
        init = InitialState(theta=1.1, phi=2.0)
        ts = solve_discrete_modes(p, init, 2001, 100.0, 10.0, 5e-4)
        assert ts.total_norm_drift is not None
        assert ts.total_norm_drift < 1e-6

    def test_weak_coupling_agreement(self):
        p = SystemParams(R=0.1, Omega=1.0, Delta1=0.5, Delta2=0.5, DeltaL=0.3, r1=0.6)
        init = InitialState(theta=1.1, phi=2.0)
        tsm = solve_discrete_modes(p, init, 2001, 100.0, 10.0, 5e-4)
        tsv = solve_volterra(p, init, 10.0, 5e-4)
        assert max_mod_diff(tsm.c1[-1], tsm.c2[-1], tsv.c1[-1], tsv.c2[-1]) < 2e-3

    def test_single_qubit_reduction(self):
        # r1 = 1 decouples qubit 2: its amplitude is frozen and qubit 1
        # follows the one-qubit survival amplitude
        p = SystemParams(R=0.5, Omega=0.0, Delta1=0.0, Delta2=0.0, DeltaL=0.0, r1=1.0)
        init = InitialState(theta=1.0, phi=0.0)
        ts = solve_discrete_modes(p, init, 2001, 100.0, 8.0, 5e-4)
        c2_0 = math.sin(0.5)
        assert np.max(np.abs(ts.c2 - c2_0)) < 1e-10
        g_end = survival_amplitude(float(ts.tau[-1]), p)
        assert abs(abs(ts.c1[-1]) - abs(g_end * math.cos(0.5))) < 2e-3


class TestSeriesPlumbing:
    def test_record_grid_hits_final_time(self):
        p = SystemParams(R=0.3)
        ts = solve_volterra(p, SUBRADIANT, 7.3, 1e-3, record_stride=1000)
        assert ts.tau[0] == 0.0
        assert ts.tau[-1] == pytest.approx(7.3, abs=1e-12)

    def test_rejects_nonpositive_horizon(self):
        with pytest.raises(ValueError):
            solve_volterra(SystemParams(R=0.3), SUBRADIANT, 0.0, 1e-3)
