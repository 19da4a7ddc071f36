"""Property-based tests for the closed-form limits.

Every predicted limit must be left unchanged by one more step of the update
law, whatever the graph and weights.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.models.equilibria import Regime
from src.models.state import (
    AttentionState,
    AttentionTotals,
    ModelParams,
    QualityVector,
)
from src.numerics.dynamics import popularity, step, totals_step
from src.numerics.equilibria import (
    augmented_limit,
    classify_regime,
    consensus_functional,
    fj_decoupled_fixed_point,
    general_fixed_point,
    interaction_matrix,
    no_network_limit,
    schur_certificate,
    z_limit,
)
from src.numerics.graph import build_row_stochastic, every_node_reaches
from src.numerics.spectral import spectral_radius
from tests.property.strategies import sizes, systems

# Property 4: Fixed points
# The joint limit assembled from (I - U~)^-1 c~ is a fixed point of the dynamics


@settings(
    max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
@given(system=systems(quality_low=0.05))
def test_general_limit_is_a_fixed_point(system):
    """
    Property: For any general-regime system, x* with popularity pi* is invariant.
    """
    P, params, q, _ = system
    assert classify_regime(params) is Regime.GENERAL
    limit = augmented_limit(params, P, q.q_tot)
    joint = [general_fixed_point(limit, q, i) for i in range(q.m)]
    x_star = AttentionState(x=np.column_stack([s[:-1] for s in joint]))

    np.testing.assert_allclose(
        popularity(x_star).pi, [s[-1] for s in joint], atol=1e-10
    )
    np.testing.assert_allclose(step(x_star, params, P, q).x, x_star.x, atol=1e-10)
    np.testing.assert_allclose(x_star.x.sum(axis=1), limit.z_star, atol=1e-10)


@settings(max_examples=100, deadline=None)
@given(system=systems(quality_low=0.05))
def test_totals_limit_is_a_fixed_point(system):
    """
    Property: z* is invariant under the totals recursion.
    """
    P, params, q, _ = system
    z_star = AttentionTotals(z=z_limit(params, P, q.q_tot))
    np.testing.assert_allclose(
        totals_step(z_star, params, P, q.q_tot).z, z_star.z, atol=1e-10
    )


@settings(max_examples=100, deadline=None)
@given(system=systems(zero=("alpha",), quality_low=0.05))
def test_no_network_limit_is_a_fixed_point(system):
    """
    Property: Without network weights the closed-form limit is invariant.
    """
    P, params, q, _ = system
    pi_star, x_star = no_network_limit(params, q)
    np.testing.assert_allclose(step(x_star, params, P, q).x, x_star.x, atol=1e-12)
    np.testing.assert_allclose(popularity(x_star).pi, pi_star.pi, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(system=systems(zero=("beta",)))
def test_decoupled_limit_is_the_quality(system):
    """
    Property: Without recommendations every user settles at q_i.
    """
    P, params, q, _ = system
    for i in range(q.m):
        np.testing.assert_allclose(fj_decoupled_fixed_point(params, P, q, i), q.q[i])


# Property 5: Consensus functional
# Without quality weights phi is a left fixed vector of the limit matrix and
# is normalized against the initial totals


@settings(
    max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
@given(system=systems(zero=("gamma",)))
def test_consensus_functional_normalization(system):
    """
    Property: phi'(z(0), 1) = 1 and phi is nonnegative.
    """
    P, params, _, x = system
    z0 = np.maximum(x.x.sum(axis=1), 1.0)
    certificate = schur_certificate(
        params, P, Regime.NO_QUALITY, z0=AttentionTotals(z=z0)
    )
    assert certificate.hypotheses_hold
    phi = consensus_functional(params, P, z0)
    assert np.all(phi >= -1e-12)
    assert float(phi @ np.append(z0, 1.0)) == pytest.approx(1.0, abs=1e-9)


# Property 11: Stability of AP
# rho(AP) < 1 exactly when every node reaches a node with alpha_w < 1


@st.composite
def partially_stubborn_systems(draw):
    """Random supports with self-loops and some users at alpha = 1."""
    n = draw(sizes)
    support = draw(arrays(np.float64, (n, n), elements=st.sampled_from([0.0, 1.0])))
    P = build_row_stochastic(support + np.eye(n))
    alpha = draw(
        arrays(
            np.float64,
            (n,),
            elements=st.one_of(
                st.just(1.0), st.floats(min_value=0.0, max_value=0.99)
            ),
        )
    )
    params = ModelParams(alpha=alpha, beta=1.0 - alpha, gamma=np.zeros(n))
    return P, params


@settings(max_examples=200, deadline=None)
@given(system=partially_stubborn_systems())
def test_reaching_a_deficient_node_makes_ap_stable(system):
    """
    Property: rho(AP) < 1 iff every node reaches some node with alpha_w < 1.
    """
    P, params = system
    rho = spectral_radius(interaction_matrix(params, P))
    if every_node_reaches(P, params.alpha < 1.0):
        assert rho < 1.0
    else:
        # Nodes that reach no deficient node form a closed stochastic block
        assert rho == pytest.approx(1.0, abs=1e-9)


# Property 12: Quality scaling
# Without network weights the popularity limit depends on q only through q / q_tot


@settings(max_examples=100, deadline=None)
@given(
    system=systems(zero=("alpha",), quality_low=0.05),
    scale=st.floats(min_value=0.05, max_value=1.0, allow_nan=False),
)
def test_no_network_popularity_is_scale_invariant(system, scale):
    """
    Property: q and c q give the same limiting popularity q / q_tot.
    """
    _, params, q, _ = system
    scaled = QualityVector(q=scale * q.q)
    pi_star, _ = no_network_limit(params, q)
    pi_scaled, x_scaled = no_network_limit(params, scaled)

    np.testing.assert_allclose(pi_scaled.pi, pi_star.pi, atol=1e-12)
    np.testing.assert_allclose(pi_star.pi, q.q / q.q_tot, atol=1e-12)
    beta = params.beta[:, None]
    np.testing.assert_allclose(
        x_scaled.x, beta * pi_star.pi + (1.0 - beta) * scaled.q, atol=1e-12
    )
