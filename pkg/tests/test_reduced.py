import math

import numpy as np
import pytest

from stripelab.energy import breakdown_reduced
from stripelab.oracle import alpha0, boundary_layer_psi0, limit_profile_phi0
from stripelab.params import Grid, Profile, ReducedParams, classify_regime
from stripelab.quadrature import integral_J
from stripelab.reduced import (
    DirectOptions,
    build_test_profile,
    direct_minimize_reduced,
    energy_of_slope,
    flight_angle,
    integrate_profile,
    measure_period,
    solve_reduced,
)
from stripelab.rootfind import golden_min

ALPHA0_AT_HALF = 0.7293131778811505


@pytest.fixture(scope="module")
def subcritical_result():
    p = ReducedParams.from_kappa_tilde(0.0125, 0.25)
    return p, solve_reduced(p)


@pytest.fixture(scope="module")
def supercritical_result():
    p = ReducedParams.from_kappa_tilde(0.01, 0.5)
    return p, solve_reduced(p)


class TestFlightAngle:
    def test_steep_slope_is_linear_flow(self):
        beta = 0.05
        for at in (50.0, 200.0):
            assert flight_angle(at, beta) == pytest.approx(at / beta, rel=2e-4)

    def test_monotone_in_slope(self):
        beta = 0.02
        slopes = np.geomspace(0.05, 1.5, 25)
        phis = [flight_angle(a, beta) for a in slopes]
        assert all(a < b for a, b in zip(phis, phis[1:]))

    def test_winding_matches_period(self):
        # Phi * T is one half-turn per period: Phi/pi ~ 1/T up to one period
        beta = 0.01
        a0 = alpha0(0.5)
        phi1 = flight_angle(a0, beta)
        T = 2.0 * beta * integral_J(a0)
        assert abs(phi1 / math.pi - 1.0 / T) <= 1.0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            flight_angle(0.0, 0.01)


class TestEnergyOfSlope:
    def test_supercritical_argmin_near_optimal_slope(self):
        p = ReducedParams.from_kappa_tilde(0.02, 0.5)
        a0 = alpha0(0.5)
        t_best, _ = golden_min(lambda t: energy_of_slope(math.exp(t), p),
                               math.log(0.5 * a0), math.log(1.5 * a0), xtol=1e-10)
        assert abs(math.exp(t_best) - a0) <= 5.0 * p.beta

    def test_subcritical_minimum_matches_transition_cost(self):
        p = ReducedParams.from_kappa_tilde(0.01, 0.25)
        r = solve_reduced(p)
        expected = (1.0 - math.sqrt(0.75)) / 4.0 - 0.125 * math.pi / 6.0
        assert r.energy * p.beta == pytest.approx(expected, abs=1e-3)

    def test_coercive_in_slope(self):
        p = ReducedParams.from_kappa_tilde(0.05, 0.5)
        vals = [energy_of_slope(a, p) for a in (1.0, 4.0, 16.0, 64.0)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert vals[-1] > 0.0

    def test_agrees_with_trapezoid_energy_of_profile(self, supercritical_result):
        p, r = supercritical_result
        bd = breakdown_reduced(r.profile.values, r.profile.grid.spacing,
                               p.beta, p.kappa)
        rel = abs(bd.total - r.energy) / abs(r.energy)
        assert rel < 10.0 * r.profile.grid.spacing ** 2 / p.beta


class TestSolveReduced:
    def test_subcritical_endpoint(self, subcritical_result):
        _, r = subcritical_result
        assert abs(r.phi_end - math.pi / 6.0) < 1e-3
        assert r.period is None
        assert r.profile.values[0] == 0.0
        assert np.all(np.diff(r.profile.values) > 0.0)

    def test_stripe_scale_stable_under_refinement(self):
        scales = []
        for beta in (0.01, 0.005):
            p = ReducedParams.from_kappa_tilde(beta, 0.5)
            r = solve_reduced(p)
            scales.append(r.period.N * beta)
        assert 0.8 <= scales[0] / scales[1] <= 1.2

    def test_vanishing_drive_endpoint(self):
        p = ReducedParams(beta=0.001, kappa=1.0)
        r = solve_reduced(p)
        assert 0.95 <= r.phi_end / (2.0 * 1.0 * 0.001) <= 1.05
        assert "slope-underflow" in r.warnings

    def test_zero_drive(self):
        p = ReducedParams(beta=0.05, kappa=0.0)
        r = solve_reduced(p)
        assert r.energy == 0.0
        assert np.all(r.profile.values == 0.0)

    def test_neumann_residual_small(self, supercritical_result):
        p, r = supercritical_result
        assert r.neumann_residual <= 1e-6 * 2.0 * p.kappa

    def test_supercritical_reaches_pi(self, supercritical_result):
        _, r = supercritical_result
        assert r.phi_end >= math.pi
        assert r.period is not None and r.period.N >= 1

    def test_threshold_flagged(self):
        p = ReducedParams.from_kappa_tilde(0.05, 1.0 / math.pi)
        r = solve_reduced(p)
        assert "threshold-regime" in r.warnings


class TestIntegrateProfile:
    def test_steep_slope_stays_near_linear(self):
        p = ReducedParams.from_kappa_tilde(0.05, 0.5)
        grid = Grid.unit(512)
        alpha = 100.0 * 2.0 * p.kappa_tilde / p.beta
        prof, slopes = integrate_profile(alpha, p, grid)
        deviation = abs(prof.values[-1] - alpha * 1.0)
        assert deviation <= 1.0 / (2.0 * alpha * p.beta**2)

    def test_monotone(self, supercritical_result):
        _, r = supercritical_result
        assert np.all(np.diff(r.profile.values) > 0.0)
        assert np.all(r.slopes > 0.0)

    def test_first_integral_drift(self, supercritical_result):
        _, r = supercritical_result
        assert r.first_integral_residual < 1e-8

    def test_tail_matches_boundary_layer(self):
        p = ReducedParams.from_kappa_tilde(0.01, 0.25)
        r = solve_reduced(p)
        s = np.linspace(0.0, 5.0, 1001)
        tail = np.interp(1.0 - p.beta * s, r.profile.grid.nodes, r.profile.values)
        err = np.max(np.abs(tail - boundary_layer_psi0(s, 0.25)))
        assert err < 0.02

    def test_rejects_nonpositive_slope(self):
        p = ReducedParams.from_kappa_tilde(0.05, 0.25)
        with pytest.raises(ValueError):
            integrate_profile(0.0, p, Grid.unit(64))


class TestEquipartition:
    def test_discrete_equipartition(self, supercritical_result):
        p, r = supercritical_result
        h = r.profile.grid.spacing
        w = np.full(r.profile.grid.n, h)
        w[0] = w[-1] = h / 2.0
        lhs = float(np.sum(w * r.slopes**2))
        rhs = float(np.sum(w * (np.sin(r.profile.values)**2 / p.beta**2
                                + r.alpha**2)))
        assert abs(lhs - rhs) / abs(lhs) < 1e-6


class TestEnvelope:
    def test_subcritical_exponential_envelope(self, subcritical_result):
        p, r = subcritical_result
        x = r.profile.grid.nodes[:-1]
        v = r.profile.values[:-1]
        env = 2.0 * np.arctan(math.tan(0.5 * r.phi_end)
                              * np.exp((x - 1.0) / p.beta))
        assert np.all(v < env)


class TestMeasurePeriod:
    def test_exact_flow_residuals(self):
        p = ReducedParams.from_kappa_tilde(0.02, 0.5)
        r = solve_reduced(p, grid=Grid.unit(32769))
        assert r.period.periodicity_residual < 1e-6
        assert r.period.symmetry_residual < 1e-6

    def test_subcritical_returns_none(self, subcritical_result):
        _, r = subcritical_result
        assert measure_period(r.profile) is None

    def test_count_is_floor_of_inverse_period(self, supercritical_result):
        _, r = supercritical_result
        assert r.period.N == int(1.0 / r.period.T)


class TestDirectMinimize:
    def test_subcritical_from_zero_matches_shooting(self):
        # endpoint equilibration is the slowest mode of the explicit flow;
        # beta = 0.01 keeps its rate h^2/beta^2 tractable at this n
        p = ReducedParams.from_kappa_tilde(0.01, 0.25)
        grid = Grid.unit(8193)
        r = solve_reduced(p, grid=grid)
        init = Profile(grid, np.zeros(grid.n))
        prof, bd = direct_minimize_reduced(p, grid, init,
                                           DirectOptions(max_iter=130_000))
        assert abs(prof.values[-1] - r.phi_end) < 2e-3

    def test_large_drive_stays_near_linear(self):
        p = ReducedParams.from_kappa_tilde(0.01, 5.0)
        grid = Grid.unit(6401)
        init = Profile(grid, 2.0 * p.kappa * grid.nodes)
        prof, bd = direct_minimize_reduced(p, grid, init,
                                           DirectOptions(max_iter=20_000))
        assert bd.total * p.beta**2 == pytest.approx(-12.5, rel=0.05)

    def test_zero_drive_fixed_point(self):
        p = ReducedParams(beta=0.05, kappa=0.0)
        grid = Grid.unit(256)
        init = Profile(grid, np.zeros(grid.n))
        prof, bd = direct_minimize_reduced(p, grid, init)
        assert np.all(prof.values == 0.0)
        assert bd.total == 0.0

    def test_rejects_unpinned_init(self):
        p = ReducedParams.from_kappa_tilde(0.05, 0.25)
        grid = Grid.unit(256)
        with pytest.raises(ValueError):
            direct_minimize_reduced(p, grid, Profile(grid, np.ones(grid.n)))


class TestCertificates:
    def test_subcritical_certificate(self, subcritical_result):
        p, r = subcritical_result
        grid = r.profile.grid
        prof = build_test_profile(classify_regime(p), p, grid)
        bd = breakdown_reduced(prof.values, grid.spacing, p.beta, p.kappa)
        assert bd.total >= r.energy

    def test_supercritical_certificate_and_single_transition(self, supercritical_result):
        p, r = supercritical_result
        grid = r.profile.grid
        regime = classify_regime(p)
        staircase = build_test_profile(regime, p, grid)
        bd = breakdown_reduced(staircase.values, grid.spacing, p.beta, p.kappa)
        assert bd.total >= r.energy
        single = build_test_profile(regime, p, grid, n_transitions=1)
        bd1 = breakdown_reduced(single.values, grid.spacing, p.beta, p.kappa)
        # one transition cannot beat the many-stripe minimizer
        assert bd1.total * p.beta > -alpha0(0.5) ** 2 / 8.0 / p.beta
        assert bd1.total > bd.total

    def test_zero_drive_certificate(self):
        p = ReducedParams(beta=0.05, kappa=0.0)
        grid = Grid.unit(256)
        prof = build_test_profile(classify_regime(p), p, grid)
        assert np.all(prof.values == 0.0)


class TestRescaledLimit:
    def test_blowup_converges_to_limit_profile(self):
        # the optimal slope oscillates around its limit with the stripe
        # phase, so convergence is asserted in aggregate over a sweep
        a0 = alpha0(0.5)
        glim = Grid(n=2049, length=10.0)
        lim = limit_profile_phi0(a0, glim)
        errs = []
        for beta in (0.04, 0.02, 0.01, 0.005):
            p = ReducedParams.from_kappa_tilde(beta, 0.5)
            r = solve_reduced(p)
            resc = np.interp(beta * glim.nodes, r.profile.grid.nodes,
                             r.profile.values)
            errs.append(float(np.max(np.abs(resc - lim.values))))
        assert min(errs[2:]) < min(errs[:2])
        assert errs[-1] < 0.12
        assert max(errs) < 10.0 * math.sqrt(0.04)
