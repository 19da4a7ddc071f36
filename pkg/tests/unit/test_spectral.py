"""Unit tests for spectral radii, stationary vectors and power decay."""

import numpy as np
import pytest

from src.models.errors import DomainError, MatrixOverflowError, NotUniqueError
from src.numerics import spectral
from src.numerics.spectral import (
    decay_envelope,
    decay_slope,
    power_norm_decay,
    spectral_radius,
    stationary_distribution,
    subdominant_magnitude,
)


class TestSpectralRadius:
    def test_diagonal(self):
        assert spectral_radius(np.diag([0.2, -0.7, 0.5])) == pytest.approx(0.7)

    def test_positive_matrix_matches_dense(self):
        rng = np.random.default_rng(3)
        M = rng.uniform(0.0, 1.0, size=(6, 6))
        expected = np.max(np.abs(np.linalg.eigvals(M)))
        assert spectral_radius(M) == pytest.approx(expected, rel=1e-10)

    def test_scaled_permutation(self, ring3):
        assert spectral_radius(0.5 * ring3.entries) == pytest.approx(0.5)

    def test_oscillating_ratio_falls_back(self):
        # M^2 = I, so the l1 ratio alternates forever
        M = np.array([[0.0, 2.0], [0.5, 0.0]])
        assert spectral_radius(M) == pytest.approx(1.0)

    def test_stochastic_matrix_has_unit_radius(self, lazy_ring3):
        assert spectral_radius(lazy_ring3.entries) == pytest.approx(1.0)

    def test_nilpotent(self):
        assert spectral_radius(np.array([[0.0, 1.0], [0.0, 0.0]])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_nearly_tied_eigenvalues(self):
        rho = spectral_radius(np.diag([0.7 - 1e-7, 0.7]))
        assert abs(rho - 0.7) / 0.7 <= 1e-9

    def test_stalled_iteration_uses_dense_solver(self, mocker):
        dense = mocker.spy(spectral, "_dense_spectral_radius")
        spectral_radius(np.diag([0.7 - 1e-7, 0.7]))
        dense.assert_called_once()

    def test_well_separated_spectrum_skips_dense_solver(self, mocker):
        dense = mocker.spy(spectral, "_dense_spectral_radius")
        assert spectral_radius(np.diag([0.2, 0.7])) == pytest.approx(0.7, rel=1e-10)
        dense.assert_not_called()

    def test_empty(self):
        assert spectral_radius(np.empty((0, 0))) == 0.0

    def test_non_square(self):
        with pytest.raises(DomainError):
            spectral_radius(np.ones((2, 3)))


class TestSubdominantMagnitude:
    def test_second_largest_modulus(self):
        assert subdominant_magnitude(np.diag([1.0, 0.3, -0.6])) == pytest.approx(0.6)

    def test_ties_are_kept(self):
        assert subdominant_magnitude(np.diag([1.0, -1.0])) == pytest.approx(1.0)

    def test_scalar(self):
        assert subdominant_magnitude(np.array([[0.4]])) == 0.0


class TestStationaryDistribution:
    def test_two_state_chain(self):
        M = np.array([[0.9, 0.1], [0.5, 0.5]])
        phi = stationary_distribution(M)
        np.testing.assert_allclose(phi, [5 / 6, 1 / 6], atol=1e-12)

    def test_left_fixed_point(self, lazy_ring3):
        phi = stationary_distribution(lazy_ring3)
        assert phi.sum() == pytest.approx(1.0)
        assert np.all(phi >= 0)
        np.testing.assert_allclose(phi @ lazy_ring3.entries, phi, atol=1e-10)

    def test_reducible_chain_is_not_unique(self):
        with pytest.raises(NotUniqueError):
            stationary_distribution(np.eye(2))


class TestPowerNormDecay:
    def test_norms_of_scaled_identity(self):
        decay = power_norm_decay(0.5 * np.eye(2), 4)
        assert [k for k, _ in decay] == [1, 2, 3, 4]
        np.testing.assert_allclose(
            [norm for _, norm in decay], [0.5**k for k in range(1, 5)]
        )

    def test_slope_recovers_log_radius(self):
        rng = np.random.default_rng(11)
        M = rng.uniform(0.0, 1.0, size=(5, 5))
        M *= 0.8 / spectral_radius(M)
        decay = power_norm_decay(M, 200)
        assert decay_slope(decay) == pytest.approx(np.log(0.8), rel=0.02)

    def test_jordan_block_envelope_is_bounded(self):
        M = np.array([[0.9, 1.0], [0.0, 0.9]])
        decay = power_norm_decay(M, 300)
        envelope = decay_envelope(decay, 0.9, 2)
        assert np.all(np.isfinite(envelope))
        assert envelope[-1] <= envelope.max()

    def test_rejects_unstable_matrix(self):
        with pytest.raises(DomainError):
            power_norm_decay(np.eye(2), 5)

    def test_rejects_non_positive_k(self):
        with pytest.raises(DomainError):
            power_norm_decay(0.5 * np.eye(2), 0)

    def test_overflow_is_reported(self):
        # Huge transient growth before the contraction sets in
        M = np.array([[0.5, 1e200, 0.0], [0.0, 0.5, 1e200], [0.0, 0.0, 0.5]])
        with pytest.raises(MatrixOverflowError) as exc:
            power_norm_decay(M, 10)
        assert "k_reached" in exc.value.details

    def test_envelope_rejects_bad_radius(self):
        with pytest.raises(DomainError):
            decay_envelope([(1, 0.5)], 1.0, 1)


class TestNilpotentDecay:
    """A nilpotent matrix has powers that vanish after finitely many steps."""

    NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]])

    def test_powers_vanish_after_the_first(self):
        decay = power_norm_decay(self.NILPOTENT, 6)
        assert decay == [(1, 1.0), (2, 0.0), (3, 0.0), (4, 0.0), (5, 0.0), (6, 0.0)]

    def test_slope_is_undefined(self):
        with pytest.raises(DomainError):
            decay_slope(power_norm_decay(self.NILPOTENT, 6))

    def test_envelope_is_undefined(self):
        decay = power_norm_decay(self.NILPOTENT, 6)
        with pytest.raises(DomainError):
            decay_envelope(decay, spectral_radius(self.NILPOTENT), 1)
