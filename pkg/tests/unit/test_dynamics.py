"""Unit tests for the attention update law."""

import numpy as np
import pytest

from src.models.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    ZeroTotalAttentionError,
)
from src.models.graph import RowStochasticMatrix
from src.models.state import AttentionState, AttentionTotals, ModelParams, QualityVector
from src.numerics.dynamics import (
    augmented_state,
    popularity,
    step,
    totals,
    totals_step,
)


class TestPopularity:
    def test_column_shares(self):
        state = AttentionState(x=[[0.2, 0.6], [0.2, 0.0]])
        np.testing.assert_allclose(popularity(state).pi, [0.4, 0.6])

    def test_zero_attention(self):
        with pytest.raises(ZeroTotalAttentionError) as exc:
            popularity(AttentionState(x=np.zeros((2, 2)), t=7))
        assert exc.value.details["t"] == 7


class TestStep:
    def test_matches_update_law(
        self, lazy_ring3, small_params, small_quality, small_state
    ):
        nxt = step(small_state, small_params, lazy_ring3, small_quality)
        x = small_state.x
        pi = x.sum(axis=0) / x.sum()
        expected = (
            small_params.alpha[:, None] * (lazy_ring3.entries @ x)
            + small_params.beta[:, None] * pi[None, :]
            + small_params.gamma[:, None] * small_quality.q[None, :]
        )
        np.testing.assert_allclose(nxt.x, expected, atol=1e-15)
        assert nxt.t == 1

    def test_popularity_uses_state_before_update(self):
        # One user, pure recommendation: x(t+1) = pi(t)
        params = ModelParams(alpha=[0.0], beta=[1.0], gamma=[0.0])
        P = RowStochasticMatrix(entries=[[1.0]])
        q = QualityVector(q=[0.0, 0.0])
        nxt = step(AttentionState(x=[[0.2, 0.6]]), params, P, q)
        np.testing.assert_allclose(nxt.x, [[0.25, 0.75]])

    def test_no_network_ignores_neighbours(self, ring3, small_quality):
        params = ModelParams(alpha=[0.0] * 3, beta=[0.5] * 3, gamma=[0.5] * 3)
        a = AttentionState(x=[[0.1, 0.1], [0.9, 0.9], [0.5, 0.5]])
        b = AttentionState(x=[[0.9, 0.9], [0.1, 0.1], [0.5, 0.5]])
        np.testing.assert_allclose(
            step(a, params, ring3, small_quality).x,
            step(b, params, ring3, small_quality).x,
        )

    def test_dimension_mismatch(self, lazy_ring3, small_params, small_state):
        with pytest.raises(DimensionMismatchError):
            step(small_state, small_params, lazy_ring3, QualityVector(q=[0.5]))

    def test_zero_state(self, lazy_ring3, small_params, small_quality):
        with pytest.raises(ZeroTotalAttentionError):
            step(
                AttentionState(x=np.zeros((3, 2))),
                small_params,
                lazy_ring3,
                small_quality,
            )


class TestTotals:
    def test_totals_are_row_sums(self, small_state):
        np.testing.assert_allclose(totals(small_state).z, [1.1, 1.0, 1.1])

    def test_totals_step_matches_summed_step(
        self, lazy_ring3, small_params, small_quality, small_state
    ):
        nxt = step(small_state, small_params, lazy_ring3, small_quality)
        predicted = totals_step(
            totals(small_state), small_params, lazy_ring3, small_quality.q_tot
        )
        np.testing.assert_allclose(predicted.z, totals(nxt).z, atol=1e-14)

    def test_unit_totals_are_preserved_without_quality(self, lazy_ring3):
        params = ModelParams(
            alpha=[0.5, 0.2, 0.9], beta=[0.5, 0.8, 0.1], gamma=[0.0] * 3
        )
        z = AttentionTotals(z=np.ones(3))
        np.testing.assert_allclose(totals_step(z, params, lazy_ring3, 0.0).z, 1.0)


class TestAugmentedState:
    def test_column_then_popularity(self, small_state):
        s = augmented_state(small_state, 1)
        np.testing.assert_allclose(s[:-1], small_state.x[:, 1])
        assert s[-1] == pytest.approx(1.5 / 3.2)

    def test_index_out_of_range(self, small_state):
        with pytest.raises(IndexOutOfRangeError):
            augmented_state(small_state, 2)
