"""Quantumness measures: the scalar, the series, the branch average."""

import itertools

import numpy as np
import pytest

from phiwalk.errors import ValidationError
from phiwalk.measures import (
    QuantumnessSeries,
    phi,
    phi_av,
    phi_av_sampled,
    phi_delta_series,
    phi_mub_analytic,
    phi_pure_analytic,
    phi_relative,
)
from phiwalk.states import mub_pair, rotated_pure_pair
from phiwalk.walk import (
    WalkConfig,
    coin_channel,
    coin_operator,
    evolve,
    initial_state,
    shift_operator,
)

from helpers import random_density, random_unitary


class TestPhi:
    def test_self_is_zero(self, rng):
        rho = random_density(rng, 4)
        assert phi(rho, rho) == 0.0

    def test_symmetric(self, rng):
        for _ in range(25):
            a = random_density(rng, 5)
            b = random_density(rng, 5)
            assert phi(a, b) == pytest.approx(phi(b, a), abs=1e-14)

    def test_commuting_pair_is_zero(self, rng):
        diag_a = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        diag_b = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        assert phi(diag_a, diag_b) < 1e-12

    def test_range_on_random_pairs(self, rng):
        for _ in range(300):
            dim = int(rng.integers(2, 9))
            value = phi(random_density(rng, dim), random_density(rng, dim))
            assert -1e-12 <= value <= 1 + 1e-12

    def test_unitary_invariance(self, rng):
        for _ in range(20):
            dim = int(rng.integers(2, 7))
            a = random_density(rng, dim)
            b = random_density(rng, dim)
            u = random_unitary(rng, dim)
            rotated = phi(u @ a @ u.conj().T, u @ b @ u.conj().T)
            assert rotated == pytest.approx(phi(a, b), abs=1e-11)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValidationError):
            phi(random_density(rng, 2), random_density(rng, 3))

    def test_accepts_density_operator_wrappers(self):
        rho, sigma = rotated_pure_pair(0.4)
        assert phi(rho, sigma) == pytest.approx(phi(rho.matrix, sigma.matrix), abs=1e-15)


class TestAnalyticOracles:
    def test_pure_pair_grid(self):
        for theta in np.linspace(0.0, np.pi / 2, 100):
            assert phi(*rotated_pure_pair(theta)) == pytest.approx(
                phi_pure_analytic(theta), abs=1e-10
            )

    def test_maximum_at_quarter_pi(self):
        assert phi(*rotated_pure_pair(np.pi / 4)) == pytest.approx(1.0, abs=1e-10)
        assert phi_pure_analytic(np.pi / 4) == 1.0

    @pytest.mark.parametrize("d", range(2, 9))
    def test_mub_formula(self, d):
        assert phi(*mub_pair(d)) == pytest.approx(phi_mub_analytic(d), abs=1e-10)
        assert phi_mub_analytic(d) == pytest.approx(4 * (d - 1) / d**2, abs=1e-15)


class TestQuantumnessSeries:
    def test_rejects_length_mismatch(self):
        with pytest.raises(ValidationError):
            QuantumnessSeries(np.array([1, 2, 3]), np.array([0.1, 0.2]))

    def test_rejects_unsorted_times(self):
        with pytest.raises(ValidationError):
            QuantumnessSeries(np.array([2, 1]), np.array([0.1, 0.2]))

    def test_rejects_out_of_range_values(self):
        with pytest.raises(ValidationError):
            QuantumnessSeries(np.array([1, 2]), np.array([0.1, 1.5]))

    def test_value_at(self):
        series = QuantumnessSeries(np.array([2, 4]), np.array([0.5, 0.25]))
        assert series.value_at(4) == 0.25
        with pytest.raises(ValidationError):
            series.value_at(3)


class TestPhiDeltaSeries:
    def test_zero_lag_is_zero_series(self):
        history = evolve(WalkConfig(steps=6))
        series = phi_delta_series(history, 0)
        assert np.array_equal(series.times, np.arange(0, 7))
        assert np.all(series.values == 0.0)

    def test_matches_direct_phi(self):
        history = evolve(WalkConfig(steps=8, mu=0.1))
        series = phi_delta_series(history, 3)
        assert np.array_equal(series.times, np.arange(3, 9))
        for i, t in enumerate(series.times):
            direct = phi(history.states[t], history.states[t - 3])
            assert series.values[i] == pytest.approx(direct, abs=1e-14)

    def test_odd_lag_vanishes_for_unitary_walk(self):
        # Disjoint parity supports make rho(t) rho(t-1) = 0 identically.
        history = evolve(WalkConfig(steps=6))
        series = phi_delta_series(history, 1)
        assert np.all(series.values == 0.0)

    def test_rejects_lag_beyond_history(self):
        history = evolve(WalkConfig(steps=4))
        with pytest.raises(ValidationError):
            phi_delta_series(history, 5)


def brute_force_phi_av(cfg: WalkConfig, t: int, normalized: bool = False) -> float:
    """Enumerate every Kraus history with plain dense matrix products."""
    size = cfg.lattice_size
    eye = np.eye(size, dtype=complex)
    unitary = shift_operator(cfg.lattice_half_width).matrix @ np.kron(
        coin_operator(cfg.alpha), eye
    )
    lifted = [np.kron(op, eye) for op in coin_channel(cfg).operators]
    branches = []
    for combo in itertools.product(range(len(lifted)), repeat=t):
        rho = initial_state(cfg).matrix
        for j in combo:
            rho = unitary @ rho @ unitary.conj().T
            rho = lifted[j] @ rho @ lifted[j].conj().T
        branches.append(rho)
    total = 0.0
    for a in branches:
        for b in branches:
            comm = a @ b - b @ a
            term = 2.0 * float(np.sum(np.abs(comm) ** 2))
            if normalized:
                pa, pb = float(np.trace(a).real), float(np.trace(b).real)
                if pa <= 0 or pb <= 0:
                    continue
                term /= pa * pb
            total += term
    return total


class TestPhiAv:
    def test_matches_brute_force(self):
        for mu, t in ((0.3, 3), (0.7, 3), (0.5, 4)):
            cfg = WalkConfig(steps=t, mu=mu)
            assert phi_av(cfg, t) == pytest.approx(
                brute_force_phi_av(cfg, t), abs=1e-12
            )

    def test_normalized_matches_brute_force(self):
        cfg = WalkConfig(steps=3, mu=0.4)
        assert phi_av(cfg, 3, normalized=True) == pytest.approx(
            brute_force_phi_av(cfg, 3, normalized=True), abs=1e-10
        )

    def test_unitary_walk_gives_zero(self):
        assert phi_av(WalkConfig(steps=4, mu=0.0), 4) == 0.0

    def test_normalized_dominates_unnormalized(self):
        # Branch traces are at most 1, so dividing by their product can
        # only grow each pair term.
        cfg = WalkConfig(steps=4, mu=0.3)
        assert phi_av(cfg, 4, normalized=True) >= phi_av(cfg, 4) - 1e-12


class TestPhiAvSampled:
    def test_deterministic_for_fixed_seed(self):
        cfg = WalkConfig(steps=4, mu=0.3, seed=7)
        first = phi_av_sampled(cfg, 4, n_samples=200)
        second = phi_av_sampled(cfg, 4, n_samples=200)
        assert first == second

    def test_seed_argument_overrides_config(self):
        cfg = WalkConfig(steps=4, mu=0.3, seed=7)
        alt = phi_av_sampled(cfg, 4, n_samples=200, seed=8)
        assert alt != phi_av_sampled(cfg, 4, n_samples=200)

    def test_unitary_walk_gives_zero(self):
        estimate, stderr = phi_av_sampled(WalkConfig(steps=3, mu=0.0), 3, n_samples=50)
        assert estimate == 0.0
        assert stderr == 0.0

    def test_close_to_exact(self):
        cfg = WalkConfig(steps=4, mu=0.3)
        exact = phi_av(cfg, 4)
        estimate, stderr = phi_av_sampled(cfg, 4, n_samples=4000, seed=11)
        assert stderr > 0.0
        assert abs(estimate - exact) <= 5 * stderr


class TestPhiRelative:
    def test_self_ratio_is_one(self):
        history = evolve(WalkConfig(steps=8, mu=0.1))
        series = phi_delta_series(history, 2)
        ratio = phi_relative(series, series)
        assert np.all(ratio.values == 1.0)
        assert np.array_equal(ratio.times, series.times)

    def test_zero_denominators_dropped(self):
        history = evolve(WalkConfig(steps=6))
        zero = phi_delta_series(history, 0)
        ratio = phi_relative(zero, zero)
        assert len(ratio) == 0

    def test_rejects_mismatched_grids(self):
        history = evolve(WalkConfig(steps=8))
        with pytest.raises(ValidationError):
            phi_relative(phi_delta_series(history, 2), phi_delta_series(history, 4))

    def test_noisy_over_noiseless(self):
        noiseless = phi_delta_series(evolve(WalkConfig(steps=10, mu=0.0)), 2)
        noisy = phi_delta_series(evolve(WalkConfig(steps=10, mu=0.2)), 2)
        ratio = phi_relative(noisy, noiseless)
        assert np.all(ratio.values <= 1.0 + 1e-12)
        assert ratio.values[-1] < ratio.values[0]
