import math

import numpy as np
import pytest

from cavitypair.model import (
    AmplitudePair,
    InitialState,
    SystemParams,
    beta_coefficients,
    density_matrix,
    dress,
    initial_amplitudes,
)

SQ2 = 1.0 / math.sqrt(2.0)


class TestDress:
    def test_zero_detuning(self):
        d = dress(0.0, 5.0)
        assert d.chi == pytest.approx(10.0, abs=1e-12)
        assert d.eta == pytest.approx(math.pi / 2, abs=1e-12)

    def test_three_four_five(self):
        d = dress(3.0, 2.0)
        assert d.chi == pytest.approx(5.0, abs=1e-12)
        assert d.eta == pytest.approx(math.atan2(4.0, 3.0), abs=1e-12)

    def test_undriven(self):
        d = dress(4.0, 0.0)
        assert d.chi == 4.0
        assert d.eta == 0.0

    def test_degenerate_convention(self):
        d = dress(0.0, 0.0)
        assert d.chi == 0.0
        assert d.eta == 0.0

    def test_negative_omega_rejected(self):
        with pytest.raises(ValueError):
            dress(1.0, -0.1)

    def test_bounds_properties(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            delta = float(rng.uniform(-10, 10))
            omega = float(rng.uniform(0, 10))
            d = dress(delta, omega)
            assert d.chi >= abs(delta) - 1e-12
            assert d.chi >= 2.0 * omega - 1e-12
            assert 0.0 <= d.eta <= math.pi
            # eta = pi/2 exactly when delta = 0 with driving on
            if delta == 0.0 and omega > 0.0:
                assert d.eta == pytest.approx(math.pi / 2, abs=1e-12)
            if omega > 0.0 and abs(delta) > 1e-9:
                assert abs(d.eta - math.pi / 2) > 1e-12


class TestInitialAmplitudes:
    def test_north_pole(self):
        amp = initial_amplitudes(InitialState(theta=0.0, phi=1.3))
        assert amp.c1 == pytest.approx(1.0, abs=1e-15)
        assert amp.c2 == pytest.approx(0.0, abs=1e-15)

    def test_antisymmetric_combination(self):
        amp = initial_amplitudes(InitialState(theta=math.pi / 2, phi=math.pi))
        assert amp.c1 == pytest.approx(SQ2, abs=1e-12)
        assert amp.c2 == pytest.approx(-SQ2, abs=1e-12)

    def test_symmetric_combination(self):
        amp = initial_amplitudes(InitialState(theta=math.pi / 2, phi=0.0))
        assert amp.c1 == pytest.approx(SQ2, abs=1e-12)
        assert amp.c2 == pytest.approx(SQ2, abs=1e-12)

    def test_unit_norm_everywhere(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            init = InitialState(
                theta=float(rng.uniform(0, math.pi)),
                phi=float(rng.uniform(0, 2 * math.pi - 1e-9)),
            )
            assert initial_amplitudes(init).norm2 == pytest.approx(1.0, abs=1e-12)

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            InitialState(theta=-0.1)
        with pytest.raises(ValueError):
            InitialState(theta=math.pi + 0.1)
        with pytest.raises(ValueError):
            InitialState(theta=1.0, phi=2 * math.pi)


class TestBetaCoefficients:
    def test_subradiant_start(self):
        amp0 = AmplitudePair(c1=SQ2, c2=-SQ2)
        bp, bm = beta_coefficients(SQ2, amp0)
        assert bp == pytest.approx(0.0, abs=1e-12)
        assert bm == pytest.approx(1.0, abs=1e-12)

    def test_superradiant_start(self):
        amp0 = AmplitudePair(c1=SQ2, c2=SQ2)
        bp, bm = beta_coefficients(SQ2, amp0)
        assert bp == pytest.approx(1.0, abs=1e-12)
        assert bm == pytest.approx(0.0, abs=1e-12)

    def test_direct_projection(self):
        bp, bm = beta_coefficients(0.5, AmplitudePair(c1=1.0, c2=0.0))
        assert bp == pytest.approx(0.5, abs=1e-15)
        assert bm == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-15)

    def test_unitarity(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            z = rng.normal(size=4)
            c1, c2 = complex(z[0], z[1]), complex(z[2], z[3])
            scale = math.sqrt(abs(c1) ** 2 + abs(c2) ** 2)
            scale /= math.sqrt(rng.uniform(0.1, 1.0))
            amp0 = AmplitudePair(c1=c1 / scale, c2=c2 / scale)
            bp, bm = beta_coefficients(float(rng.uniform(0.05, 1.0)), amp0)
            assert abs(bp) ** 2 + abs(bm) ** 2 == pytest.approx(
                amp0.norm2, abs=1e-12
            )

    def test_r1_domain(self):
        with pytest.raises(ValueError):
            beta_coefficients(0.0, AmplitudePair(c1=1.0, c2=0.0))
        with pytest.raises(ValueError):
            beta_coefficients(1.2, AmplitudePair(c1=1.0, c2=0.0))


class TestDensityMatrix:
    def test_excited_first_qubit(self):
        rho = density_matrix(AmplitudePair(c1=1.0, c2=0.0))
        assert np.allclose(rho, np.diag([0, 1, 0, 0]), atol=1e-15)

    def test_bell_projector_block(self):
        rho = density_matrix(AmplitudePair(c1=SQ2, c2=SQ2))
        assert rho[1, 1] == pytest.approx(0.5, abs=1e-12)
        assert rho[2, 2] == pytest.approx(0.5, abs=1e-12)
        assert rho[1, 2] == pytest.approx(0.5, abs=1e-12)
        assert rho[3, 3] == pytest.approx(0.0, abs=1e-12)

    def test_partial_excitation(self):
        rho = density_matrix(AmplitudePair(c1=0.6, c2=0.5j))
        assert rho[1, 1] == pytest.approx(0.36, abs=1e-15)
        assert rho[2, 2] == pytest.approx(0.25, abs=1e-15)
        assert rho[1, 2] == pytest.approx(-0.3j, abs=1e-15)
        assert rho[2, 1] == pytest.approx(0.3j, abs=1e-15)
        assert rho[3, 3] == pytest.approx(0.39, abs=1e-15)
        # positivity by the eigenvalue oracle
        assert np.linalg.eigvalsh(rho).min() >= -1e-10

    def test_invariants_random(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            z = rng.normal(size=4)
            c1, c2 = complex(z[0], z[1]), complex(z[2], z[3])
            scale = math.sqrt(abs(c1) ** 2 + abs(c2) ** 2)
            scale /= math.sqrt(rng.uniform(0.05, 1.0))
            rho = density_matrix(AmplitudePair(c1=c1 / scale, c2=c2 / scale))
            assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
            assert np.linalg.eigvalsh(rho).min() >= -1e-10
            assert np.all(rho[0, :] == 0) and np.all(rho[:, 0] == 0)

    def test_norm_excess_rejected(self):
        with pytest.raises(ValueError):
            AmplitudePair(c1=1.0, c2=0.1)


class TestSystemParams:
    def test_r2_complement(self):
        p = SystemParams(R=1.0, r1=0.3)
        assert p.r1**2 + p.r2**2 == pytest.approx(1.0, abs=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            SystemParams(R=0.0)
        with pytest.raises(ValueError):
            SystemParams(R=1.0, r1=0.0)
        with pytest.raises(ValueError):
            SystemParams(R=1.0, r1=1.0001)
        with pytest.raises(ValueError):
            SystemParams(R=1.0, Omega=-1.0)

    def test_single_qubit_limit_allowed(self):
        assert SystemParams(R=1.0, r1=1.0).r2 == 0.0

    def test_similar_flag(self):
        assert SystemParams(R=1.0, Delta1=2.0, Delta2=2.0).similar
        assert not SystemParams(R=1.0, Delta1=2.0, Delta2=2.1).similar
