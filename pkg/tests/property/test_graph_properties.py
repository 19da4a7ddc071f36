"""Property-based tests for influence matrices and reachability."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.models.graph import NodeSet
from src.numerics.graph import (
    build_row_stochastic,
    erdos_renyi,
    influence_graph,
    reaching_set,
)
from tests.property.strategies import influence_matrices, sizes

# Property 6: Normalization
# Every nonnegative matrix without empty rows normalizes to a stochastic one
# with the same support


@st.composite
def raw_weights(draw):
    n = draw(sizes)
    weights = draw(
        arrays(
            np.float64,
            (n, n),
            elements=st.floats(min_value=0.0, max_value=100.0, allow_nan=False),
        )
    )
    weights[np.arange(n), np.arange(n)] += 1.0
    return weights


@settings(max_examples=200, deadline=None)
@given(weights=raw_weights())
def test_normalized_rows_sum_to_one(weights):
    """
    Property: Rows sum to one and the support is unchanged.
    """
    P = build_row_stochastic(weights)
    np.testing.assert_allclose(P.entries.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_array_equal(P.support(), weights > 0)


# Property 7: Reachability closure
# The reaching set contains its targets and no edge leaves the complement
# towards it


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_reaching_set_is_closed(data):
    """
    Property: No node outside the reaching set has an edge into it.
    """
    n = data.draw(sizes)
    mask = data.draw(arrays(np.bool_, (n,), elements=st.booleans()))
    mask[data.draw(st.integers(min_value=0, max_value=n - 1))] = True
    P = build_row_stochastic(
        data.draw(arrays(np.float64, (n, n), elements=st.sampled_from([0.0, 1.0])))
        + np.eye(n)
    )
    targets = NodeSet.from_mask(mask)
    reached = reaching_set(P, targets)

    assert targets.members <= reached.members
    for u, w in influence_graph(P).edges():
        if w in reached:
            assert u in reached


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_reaching_set_grows_with_the_targets(data):
    """
    Property: Adding targets never removes a node from the reaching set.
    """
    n = data.draw(sizes)
    P = build_row_stochastic(
        data.draw(arrays(np.float64, (n, n), elements=st.sampled_from([0.0, 1.0])))
        + np.eye(n)
    )
    small = data.draw(arrays(np.bool_, (n,), elements=st.booleans()))
    small[data.draw(st.integers(min_value=0, max_value=n - 1))] = True
    large = small | data.draw(arrays(np.bool_, (n,), elements=st.booleans()))

    reached_small = reaching_set(P, NodeSet.from_mask(small))
    reached_large = reaching_set(P, NodeSet.from_mask(large))
    assert reached_small.members <= reached_large.members


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_strongly_connected_matrices_reach_any_node(data):
    """
    Property: In a ring every node reaches every other node.
    """
    n = data.draw(sizes)
    P = data.draw(influence_matrices(n))
    v = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert reaching_set(P, NodeSet(n=n, members=frozenset({v}))).is_everyone()


# Property 8: Generator determinism
# The same seed always produces the same graph


@settings(max_examples=30, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=15),
    p=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_erdos_renyi_is_deterministic(n, p, seed):
    """
    Property: Equal seeds give equal matrices, and every row is stochastic.
    """
    first = erdos_renyi(n, p, seed)
    np.testing.assert_array_equal(first.entries, erdos_renyi(n, p, seed).entries)
    np.testing.assert_allclose(first.entries.sum(axis=1), 1.0, atol=1e-12)
