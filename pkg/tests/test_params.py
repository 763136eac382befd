import math

import numpy as np
import pytest

from stripelab.params import (
    FullParams,
    Grid,
    KAPPA_TILDE_CRIT,
    Profile,
    ReducedParams,
    classify_regime,
    layer_resolving_grid,
    to_wavefunctions,
)


class TestParams:
    def test_reduced_derives_kappa_tilde(self):
        p = ReducedParams(beta=0.02, kappa=12.5)
        assert p.kappa_tilde == pytest.approx(0.25, rel=1e-15)

    def test_reduced_rejects_inconsistent_derived_field(self):
        with pytest.raises(ValueError):
            ReducedParams(beta=0.02, kappa=12.5, kappa_tilde=0.3)

    def test_reduced_rejects_bad_values(self):
        with pytest.raises(ValueError):
            ReducedParams(beta=0.0, kappa=1.0)
        with pytest.raises(ValueError):
            ReducedParams(beta=0.1, kappa=-1.0)

    def test_full_derives_beta(self):
        p = FullParams(epsilon=0.01, delta=0.04, kappa=3.0)
        assert p.beta == pytest.approx(0.05, rel=1e-15)
        assert p.kappa_tilde == pytest.approx(0.15, rel=1e-15)
        red = p.reduced()
        assert red.beta == p.beta and red.kappa == p.kappa


class TestGrid:
    def test_uniform_nodes(self):
        g = Grid.unit(33)
        assert g.nodes[0] == 0.0 and g.nodes[-1] == 1.0
        steps = np.diff(g.nodes)
        assert np.max(steps) - np.min(steps) < 1e-15

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            Grid.unit(8)

    def test_layer_resolving(self):
        g = layer_resolving_grid(0.02)
        assert g.n >= 64 / 0.02

    def test_profile_length_check(self):
        g = Grid.unit(32)
        with pytest.raises(ValueError):
            Profile(g, np.zeros(31))

    def test_profile_immutable(self):
        g = Grid.unit(32)
        prof = Profile(g, np.zeros(32))
        with pytest.raises(ValueError):
            prof.values[3] = 1.0


class TestRegime:
    def test_subcritical(self):
        p = ReducedParams.from_kappa_tilde(0.01, 0.25)
        assert classify_regime(p).tag == "Subcritical"

    def test_threshold_exact(self):
        p = ReducedParams.from_kappa_tilde(0.01, 1.0 / math.pi)
        assert classify_regime(p).tag == "Threshold"

    def test_supercritical(self):
        p = ReducedParams.from_kappa_tilde(0.01, 0.5)
        assert classify_regime(p).tag == "Supercritical"

    def test_near_threshold_window(self):
        kt = (1.0 + 0.01) / math.pi
        p = ReducedParams.from_kappa_tilde(0.01, kt)
        assert classify_regime(p).tag == "NearThreshold"

    def test_monotone_in_drive(self):
        order = {"Subcritical": 0, "Threshold": 1, "NearThreshold": 2,
                 "Supercritical": 3}
        tags = [classify_regime(ReducedParams.from_kappa_tilde(0.01, kt)).tag
                for kt in np.linspace(0.05, 1.2, 47)]
        ranks = [order[t] for t in tags]
        assert ranks == sorted(ranks)

    def test_sub_flag_tracks_tie_break(self):
        below = classify_regime(ReducedParams.from_kappa_tilde(0.01, 0.36))
        above = classify_regime(ReducedParams.from_kappa_tilde(0.01, 0.37))
        assert below.sub_flag and not above.sub_flag
        assert 1.0 / math.pi < KAPPA_TILDE_CRIT < 0.5


class TestWavefunctions:
    def test_component_one_only(self):
        g = Grid.unit(64)
        v = Profile(g, np.ones(64))
        phi = Profile(g, np.zeros(64))
        u1, u2 = to_wavefunctions(v, phi)
        assert np.allclose(u1.values, 1.0) and np.allclose(u2.values, 0.0)

    def test_component_two_only(self):
        g = Grid.unit(64)
        v = Profile(g, np.ones(64))
        phi = Profile(g, np.full(64, math.pi))
        u1, u2 = to_wavefunctions(v, phi)
        assert np.max(np.abs(u1.values)) < 1e-15
        assert np.allclose(u2.values, 1.0)

    def test_pointwise_mass_identity(self):
        rng = np.random.default_rng(3)
        g = Grid.unit(128)
        v = Profile(g, 1.0 + 0.2 * rng.standard_normal(128))
        phi = Profile(g, np.cumsum(np.abs(rng.standard_normal(128))) * 0.05)
        u1, u2 = to_wavefunctions(v, phi)
        assert np.allclose(u1.values**2 + u2.values**2, v.values**2, atol=1e-14)

    def test_mass_integral_preserved(self):
        rng = np.random.default_rng(4)
        g = Grid.unit(128)
        v = Profile(g, 1.0 + 0.1 * rng.standard_normal(128))
        phi = Profile(g, rng.standard_normal(128))
        u1, u2 = to_wavefunctions(v, phi)
        h = g.spacing
        m1 = np.sum((u1.values**2 + u2.values**2)) * h
        m2 = np.sum(v.values**2) * h
        assert m1 == pytest.approx(m2, rel=1e-14)

    def test_grid_mismatch(self):
        v = Profile(Grid.unit(32), np.ones(32))
        phi = Profile(Grid.unit(64), np.zeros(64))
        with pytest.raises(ValueError):
            to_wavefunctions(v, phi)
