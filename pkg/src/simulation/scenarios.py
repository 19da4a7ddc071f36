"""Sampling of scenarios from the reference experimental protocols."""

import numpy as np

from src.constants import FIG1_QUALITY, PROTOCOLS
from src.models.errors import UnknownProtocolError
from src.models.graph import RowStochasticMatrix
from src.models.simulation import ProtocolSpec, Scenario
from src.models.state import AttentionState, ModelParams, QualityVector
from src.numerics.graph import erdos_renyi
from src.utils.logging import get_logger

logger = get_logger(__name__)


def draw_weights(
    protocol: str, n: int, rng: np.random.Generator, zero_weights: tuple[str, ...] = ()
) -> ModelParams:
    """
    Per-user weights of a protocol.

    fig1 draws beta and leaves no network term; fig2 draws beta and leaves no
    quality term; fig3 normalizes uniform triples; custom does the same with
    the named weights forced to zero.
    """
    if protocol == "fig1":
        beta = rng.uniform(0.0, 1.0, size=n)
        return ModelParams(alpha=np.zeros(n), beta=beta, gamma=1.0 - beta)
    if protocol == "fig2":
        beta = rng.uniform(0.0, 1.0, size=n)
        return ModelParams(alpha=1.0 - beta, beta=beta, gamma=np.zeros(n))

    triples = rng.uniform(0.0, 1.0, size=(n, 3))
    for column, name in enumerate(("alpha", "beta", "gamma")):
        if name in zero_weights:
            triples[:, column] = 0.0
    triples /= triples.sum(axis=1, keepdims=True)
    return ModelParams(alpha=triples[:, 0], beta=triples[:, 1], gamma=triples[:, 2])


def lift_to_unit_totals(x: np.ndarray) -> np.ndarray:
    """Rescale each row with total below 1 so that it sums to 1."""
    lifted = np.array(x, dtype=float)
    z = lifted.sum(axis=1)
    short = z < 1.0
    empty = z == 0.0
    lifted[short & ~empty] /= z[short & ~empty, None]
    lifted[empty] = 1.0 / lifted.shape[1]
    return lifted


def sample_scenario(spec: ProtocolSpec, seed: int) -> Scenario:
    """
    Draw a deterministic scenario from a protocol.

    The seed is split into independent streams for the graph, the weights,
    the quality and the initial state, so changing one part of the protocol
    leaves the draws of the others unchanged.

    Args:
        spec: Protocol and its sizes
        seed: Root seed

    Returns:
        Fully specified Scenario

    Raises:
        UnknownProtocolError: If the protocol is not known
    """
    if spec.protocol not in PROTOCOLS:
        raise UnknownProtocolError(
            f"unknown protocol '{spec.protocol}'",
            details={"protocol": spec.protocol, "known": list(PROTOCOLS)},
        )
    streams = np.random.SeedSequence(seed).spawn(4)
    graph_seq, weight_seq, quality_seq, state_seq = streams
    n = spec.n_users

    graph_seed = int(graph_seq.generate_state(1, dtype=np.uint64)[0])
    P: RowStochasticMatrix = erdos_renyi(n, spec.edge_probability, graph_seed)
    params = draw_weights(
        spec.protocol, n, np.random.default_rng(weight_seq), tuple(spec.zero_weights)
    )

    if spec.quality is not None:
        quality = np.asarray(spec.quality, dtype=float)
    elif spec.protocol == "fig1":
        quality = np.asarray(FIG1_QUALITY)
    else:
        quality = np.random.default_rng(quality_seq).uniform(
            0.0, 1.0, size=spec.n_influencers
        )

    x0 = np.random.default_rng(state_seq).uniform(0.0, 1.0, size=(n, quality.size))
    lift = spec.unit_lower_bound
    if lift is None:
        lift = spec.protocol == "fig2"
    if lift:
        x0 = lift_to_unit_totals(x0)

    logger.debug("scenario_sampled", protocol=spec.protocol, seed=seed, users=n)
    return Scenario(
        P=P,
        params=params,
        q=QualityVector(q=quality),
        x0=AttentionState(x=x0),
        horizon=spec.horizon,
        tol=spec.tol,
        seed=seed,
        record_every=spec.record_every,
    )
