"""Construction and structural analysis of row-stochastic influence matrices."""

from math import gcd
from typing import Iterable

import networkx as nx
import numpy as np

from src.models.errors import (
    EmptyTargetsError,
    IndexOutOfRangeError,
    NegativeEntryError,
    NonSquareError,
    ZeroRowError,
)
from src.models.graph import NodeSet, RowStochasticMatrix
from src.utils.logging import get_logger

logger = get_logger(__name__)


def build_row_stochastic(
    raw: np.ndarray | Iterable[Iterable[float]],
) -> RowStochasticMatrix:
    """
    Normalize every row of a nonnegative square matrix to sum 1.

    Args:
        raw: Square matrix of nonnegative weights

    Returns:
        RowStochasticMatrix with each row divided by its sum

    Raises:
        NonSquareError: If the input is not a nonempty square matrix
        NegativeEntryError: If any weight is negative
        ZeroRowError: If a user has no outgoing influence weight
    """
    weights = np.array(raw, dtype=float)
    if weights.ndim != 2 or weights.shape[0] != weights.shape[1] or weights.size == 0:
        raise NonSquareError(
            "influence matrix must be square and nonempty",
            details={"shape": list(weights.shape)},
        )
    negative = np.argwhere(weights < 0)
    if negative.size:
        v, w = (int(k) for k in negative[0])
        raise NegativeEntryError(
            f"entry ({v}, {w}) is negative", details={"row": v, "column": w}
        )

    row_sums = weights.sum(axis=1)
    empty = np.flatnonzero(row_sums == 0)
    if empty.size:
        raise ZeroRowError(
            f"user {int(empty[0])} has no outgoing influence weight",
            details={"rows": [int(v) for v in empty]},
        )
    return RowStochasticMatrix(entries=weights / row_sums[:, None])


def erdos_renyi(n: int, p: float, seed: int) -> RowStochasticMatrix:
    """
    Draw a directed Erdős-Rényi influence graph with uniform row weights.

    Each ordered pair (v, w) with v != w is an edge with probability p. A node
    left without out-edges gets a self-loop instead, so every row is defined.

    Args:
        n: Number of users
        p: Edge probability
        seed: Seed of the generator owned by this call

    Returns:
        RowStochasticMatrix over the drawn support
    """
    graph = nx.gnp_random_graph(n, p, seed=seed, directed=True)
    adjacency = nx.to_numpy_array(graph, nodelist=range(n), dtype=float)
    isolated = np.flatnonzero(adjacency.sum(axis=1) == 0)
    adjacency[isolated, isolated] = 1.0
    logger.debug(
        "erdos_renyi_drawn",
        n=n,
        p=p,
        edges=int(np.count_nonzero(adjacency)),
        self_loops_added=int(isolated.size),
    )
    return build_row_stochastic(adjacency)


def influence_graph(P: RowStochasticMatrix) -> nx.DiGraph:
    """Directed graph with an edge v -> w for every P_vw > 0."""
    return nx.from_numpy_array(P.support().astype(int), create_using=nx.DiGraph)


def reaching_set(P: RowStochasticMatrix, targets: NodeSet) -> NodeSet:
    """
    Nodes from which a directed path leads into `targets`.

    Args:
        P: Influence matrix whose support defines the graph
        targets: Nonempty target set

    Returns:
        NodeSet containing the targets and all of their ancestors

    Raises:
        EmptyTargetsError: If the target set is empty
    """
    if not targets.members:
        raise EmptyTargetsError("reachability needs at least one target node")
    if targets.n != P.n:
        raise IndexOutOfRangeError(
            "target set and matrix have different sizes",
            details={"targets_n": targets.n, "matrix_n": P.n},
        )
    graph = influence_graph(P)
    reached = set(targets.members)
    for w in targets.members:
        reached |= nx.ancestors(graph, w)
    return NodeSet(n=P.n, members=frozenset(reached))


def every_node_reaches(P: RowStochasticMatrix, mask: np.ndarray) -> bool:
    """Whether every node reaches the nodes flagged in `mask` (False if none)."""
    targets = NodeSet.from_mask(mask)
    if not targets.members:
        return False
    return reaching_set(P, targets).is_everyone()


def is_aperiodic_node(P: RowStochasticMatrix, v: int) -> bool:
    """
    Whether the cycle lengths through `v` have greatest common divisor 1.

    The period is computed for the strongly connected component of `v` from
    BFS levels: it is the gcd of level(u) + 1 - level(w) over the edges u -> w
    inside the component. A node on no cycle is not aperiodic.

    Raises:
        IndexOutOfRangeError: If `v` is not a node of P
    """
    if not 0 <= v < P.n:
        raise IndexOutOfRangeError(
            f"node {v} is outside 0..{P.n - 1}", details={"node": v}
        )
    graph = influence_graph(P)
    component = next(c for c in nx.strongly_connected_components(graph) if v in c)
    if len(component) == 1 and not graph.has_edge(v, v):
        return False

    subgraph = graph.subgraph(component)
    level = nx.single_source_shortest_path_length(subgraph, v)
    period = 0
    for u, w in subgraph.edges():
        period = gcd(period, level[u] + 1 - level[w])
        if period == 1:
            return True
    return period == 1
