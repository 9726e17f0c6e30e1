import math

import numpy as np
import pytest

import splitnls as s
from splitnls.errors import DimensionError, ParameterError


class TestSplitProblemValidation:
    def test_rejects_bad_sigma(self):
        with pytest.raises(ParameterError):
            s.default_problem(s.ProblemKind.DETERMINISTIC_NLS,
                              s.SpatialGrid(0, 50, 8), sigma=0.0)

    def test_rejects_negative_eps(self):
        with pytest.raises(ParameterError):
            s.default_problem(s.ProblemKind.STOCHASTIC_NLS,
                              s.SpatialGrid(0, 50, 8), eps=-0.1)

    def test_deterministic_kinds_reject_noise(self):
        with pytest.raises(ParameterError):
            s.default_problem(s.ProblemKind.DETERMINISTIC_NLS,
                              s.SpatialGrid(0, 50, 8), eps=0.5)

    def test_omega_range(self):
        with pytest.raises(ParameterError):
            s.default_problem(s.ProblemKind.DETERMINISTIC_PERTURBED,
                              s.SpatialGrid(0, 1, 8), omega=1.5)

    def test_kind_defaults(self):
        lin = s.default_problem(s.ProblemKind.LINEARIZED_STOCHASTIC)
        assert lin.eps == 1.0 and lin.lap_coeff == -0.5
        nls = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS)
        assert nls.eps == 0.0 and nls.lap_coeff == 1.0
        stoch = s.default_problem(s.ProblemKind.STOCHASTIC_NLS)
        assert stoch.eps == pytest.approx(0.1)
        pert = s.default_problem(s.ProblemKind.DETERMINISTIC_PERTURBED)
        assert pert.nl_coeff == 30.0 and pert.omega == pytest.approx(1.0 / 30.0)


class TestBuildOperators:
    def test_zero_eps_zeroes_noise_lift(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS, s.SpatialGrid(0, 50, 6))
        ops = s.build_operators(p, s.initial_condition(p))
        assert np.array_equal(ops.a3, np.zeros((12, 12)))

    def test_perturbed_diagonal_entries(self, rng):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_PERTURBED,
                              s.SpatialGrid(0.0, 1.0, 8))
        st = s.HamiltonianState(rng.standard_normal(8), rng.standard_normal(8))
        ops = s.build_operators(p, st)
        x = p.grid.points()
        expected = 1.0 / (1.0 + np.sin(x) ** 2) + 30.0 * (st.eta**2 + st.xi**2)
        assert np.allclose(np.diag(ops.a2[:8, 8:]), expected, atol=1e-13)

    def test_a4_is_sum(self, rng):
        p = s.default_problem(s.ProblemKind.STOCHASTIC_NLS, s.SpatialGrid(0, 50, 6))
        st = s.HamiltonianState(rng.standard_normal(6), rng.standard_normal(6))
        ops = s.build_operators(p, st)
        assert np.array_equal(ops.a4 - ops.a1 - ops.a2, np.zeros((12, 12)))
        # the producer form satisfies the same identity at any state
        other = s.HamiltonianState(rng.standard_normal(6), rng.standard_normal(6))
        assert np.array_equal(ops.a4_of(other), ops.a1 + ops.a2_of(other))

    def test_zero_state_zero_potential_kills_a2(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS, s.SpatialGrid(0, 50, 6))
        st = s.HamiltonianState(np.zeros(6), np.zeros(6))
        ops = s.build_operators(p, st)
        assert np.array_equal(ops.a2, np.zeros((12, 12)))

    def test_lifts_are_skew(self, rng):
        p = s.default_problem(s.ProblemKind.LINEARIZED_STOCHASTIC,
                              s.SpatialGrid(0.0, 1.0, 7))
        st = s.HamiltonianState(rng.standard_normal(7), rng.standard_normal(7))
        ops = s.build_operators(p, st)
        for a in (ops.a1, ops.a2, ops.a3, ops.a4):
            assert np.max(np.abs(a + a.T)) <= 1e-12

    def test_state_mismatch(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS, s.SpatialGrid(0, 50, 6))
        with pytest.raises(DimensionError):
            s.build_operators(p, s.HamiltonianState(np.ones(5), np.ones(5)))


class TestInitialCondition:
    def test_linearized_at_origin(self):
        p = s.default_problem(s.ProblemKind.LINEARIZED_STOCHASTIC,
                              s.SpatialGrid(0.0, 1.0, 10))
        ic = s.initial_condition(p)
        assert ic.eta[0] == pytest.approx(1.0)  # exp(sin 0)
        assert np.array_equal(ic.xi, np.zeros(10))
        assert np.allclose(ic.eta, np.exp(np.sin(2.0 * p.grid.points())), atol=1e-15)

    def test_soliton_peak_amplitude(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS)
        ic = s.initial_condition(p)
        x = p.grid.points()
        i25 = int(np.argmin(np.abs(x - 25.0)))
        assert x[i25] == pytest.approx(25.0)
        assert s.modulus(ic)[i25] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_soliton_modulus_symmetric_about_peak(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS,
                              s.SpatialGrid(0.0, 50.0, 100))
        mod = s.modulus(s.initial_condition(p))
        x = p.grid.points()
        i25 = int(np.argmin(np.abs(x - 25.0)))
        for k in range(1, 30):
            assert mod[i25 - k] == pytest.approx(mod[i25 + k], rel=1e-12)

    def test_boundary_tail_small(self):
        p = s.default_problem(s.ProblemKind.DETERMINISTIC_NLS)
        mod = s.modulus(s.initial_condition(p))
        assert mod[0] <= 1e-7


class TestExactSoliton:
    def test_frozen_point_values(self):
        # oracle: (1/sqrt 2) sech(0) * exp(-i 25/20) evaluated directly
        re, im = s.exact_soliton(25.0, 0.0)
        assert re == pytest.approx(0.22296658070945646, abs=1e-15)
        assert im == pytest.approx(-0.6710334595880695, abs=1e-15)
        assert math.hypot(re, im) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)

    @pytest.mark.parametrize("kind", [s.ProblemKind.STOCHASTIC_NLS,
                                      s.ProblemKind.DETERMINISTIC_NLS])
    def test_matches_initial_condition(self, kind):
        p = s.default_problem(kind)
        ic = s.initial_condition(p)
        re, im = s.exact_soliton(p.grid.points(), 0.0)
        assert np.max(np.abs(ic.eta - re)) <= 1e-14
        assert np.max(np.abs(ic.xi - im)) <= 1e-14

    def test_peak_travels_at_tenth_speed(self):
        x = np.linspace(20.0, 35.0, 20001)
        for t in (0.0, 1.0, 5.0):
            re, im = s.exact_soliton(x, t)
            peak = x[np.argmax(np.hypot(re, im))]
            assert peak == pytest.approx(25.0 + t / 10.0, abs=1e-3)

    def test_mass_time_independent(self):
        x = np.linspace(0.0, 50.0, 200001)
        dx = x[1] - x[0]
        masses = []
        for t in (0.0, 1.0):
            re, im = s.exact_soliton(x, t)
            masses.append(np.sum(re**2 + im**2) * dx)
        assert abs(masses[1] - masses[0]) <= 1e-6 * masses[0]

    def test_solves_the_pde(self):
        # residual of i u_t - u_xx - 2|u|^2 u via high-order differences
        x = np.linspace(20.0, 30.0, 2001)
        h = x[1] - x[0]
        tau = 1e-5

        def u(t):
            re, im = s.exact_soliton(x, t)
            return re + 1j * im

        u0 = u(0.4)
        ut = (u(0.4 + tau) - u(0.4 - tau)) / (2.0 * tau)
        uxx = (np.roll(u0, -1) - 2.0 * u0 + np.roll(u0, 1)) / h**2
        resid = 1j * ut - uxx - 2.0 * np.abs(u0) ** 2 * u0
        interior = resid[2:-2]
        assert np.max(np.abs(interior)) <= 1e-4


class TestSolitonState:
    def test_sampled_state(self):
        g = s.SpatialGrid(0.0, 50.0, 40)
        st = s.soliton_state(g, 0.7)
        re, im = s.exact_soliton(g.points(), 0.7)
        assert np.array_equal(st.eta, re)
        assert np.array_equal(st.xi, im)
