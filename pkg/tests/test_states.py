"""Pure states, density operators, and the analytic reference pairs."""

import numpy as np
import pytest

from phiwalk.errors import ValidationError
from phiwalk.states import (
    DensityOperator,
    PureState,
    density_from_pure,
    mixture,
    mub_pair,
    rotated_pure_pair,
)

from helpers import random_density, random_pure


class TestPureState:
    def test_accepts_unit_vector(self):
        psi = PureState(np.array([1.0, 1j]) / np.sqrt(2))
        assert psi.dim == 2

    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError):
            PureState(np.array([1.0, 1.0]))

    def test_rejects_zero_vector(self):
        with pytest.raises(ValidationError):
            PureState(np.zeros(3))

    def test_rejects_matrix_input(self):
        with pytest.raises(ValidationError):
            PureState(np.eye(2))


class TestDensityOperator:
    def test_accepts_maximally_mixed(self):
        rho = DensityOperator(np.eye(4, dtype=complex) / 4)
        assert rho.dim == 4
        assert rho.purity() == pytest.approx(0.25, abs=1e-14)

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
        with pytest.raises(ValidationError):
            DensityOperator(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValidationError):
            DensityOperator(np.eye(2, dtype=complex))

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(ValidationError):
            DensityOperator(m)

    def test_random_mixtures_validate(self, rng):
        for dim in (2, 4, 7):
            rho = DensityOperator(random_density(rng, dim))
            assert 0.0 < rho.purity() <= 1.0 + 1e-12


class TestDensityFromPure:
    def test_projector(self):
        v = np.array([1.0, 1j]) / np.sqrt(2)
        rho = density_from_pure(v)
        assert np.allclose(rho.matrix, np.outer(v, v.conj()), atol=1e-15)
        assert rho.purity() == pytest.approx(1.0, abs=1e-12)

    def test_accepts_pure_state_object(self):
        psi = PureState(np.array([0.0, 1.0], dtype=complex))
        rho = density_from_pure(psi)
        assert np.allclose(rho.matrix, np.diag([0.0, 1.0]), atol=1e-15)


class TestMixture:
    def test_convex_combination(self, rng):
        a = random_density(rng, 3)
        b = random_density(rng, 3)
        out = mixture([0.25, 0.75], [DensityOperator(a), DensityOperator(b)])
        assert np.allclose(out.matrix, 0.25 * a + 0.75 * b, atol=1e-14)

    def test_rejects_bad_weights(self, rng):
        rho = DensityOperator(random_density(rng, 2))
        with pytest.raises(ValidationError):
            mixture([0.5, 0.6], [rho, rho])
        with pytest.raises(ValidationError):
            mixture([-0.5, 1.5], [rho, rho])

    def test_rejects_length_mismatch(self, rng):
        rho = DensityOperator(random_density(rng, 2))
        with pytest.raises(ValidationError):
            mixture([1.0], [rho, rho])


class TestRotatedPurePair:
    def test_overlap_is_cos_theta(self):
        for theta in np.linspace(0.0, np.pi / 2, 7):
            rho, sigma = rotated_pure_pair(theta)
            overlap = np.trace(rho.matrix @ sigma.matrix).real
            assert overlap == pytest.approx(np.cos(theta) ** 2, abs=1e-12)

    def test_theta_zero_gives_identical_states(self):
        rho, sigma = rotated_pure_pair(0.0)
        assert np.allclose(rho.matrix, sigma.matrix, atol=1e-15)

    def test_states_are_pure(self):
        rho, sigma = rotated_pure_pair(0.3)
        assert rho.purity() == pytest.approx(1.0, abs=1e-12)
        assert sigma.purity() == pytest.approx(1.0, abs=1e-12)


class TestMubPair:
    @pytest.mark.parametrize("d", range(2, 9))
    def test_cross_overlap_is_one_over_d(self, d):
        rho, sigma = mub_pair(d)
        overlap = np.trace(rho.matrix @ sigma.matrix).real
        assert overlap == pytest.approx(1.0 / d, abs=1e-12)

    def test_rejects_dim_below_two(self):
        with pytest.raises(ValidationError):
            mub_pair(1)
