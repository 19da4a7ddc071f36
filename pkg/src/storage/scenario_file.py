"""Parsing and writing of JSON scenario files."""

import hashlib
import json
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as PydanticValidationError

from src.constants import PROTOCOLS
from src.models.errors import (
    PopularityModelError,
    ScenarioParseError,
    UnknownProtocolError,
)
from src.models.files import (
    ErdosRenyiGraphSpec,
    ExplicitGraphSpec,
    ExplicitParamsSpec,
    ExplicitStateSpec,
    ProtocolParamsSpec,
    ScenarioFile,
    UniformStateSpec,
)
from src.models.graph import RowStochasticMatrix
from src.models.simulation import Scenario
from src.models.state import AttentionState, ModelParams, QualityVector
from src.numerics.graph import build_row_stochastic, erdos_renyi
from src.simulation.scenarios import draw_weights, lift_to_unit_totals
from src.utils.logging import get_logger

logger = get_logger(__name__)

SEED_STREAMS = ("graph", "params", "x0")


class LoadedScenario(BaseModel):
    """A parsed scenario with the provenance needed for its manifest."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    scenario: Scenario
    digest: str
    seeds: Dict[str, Optional[int]]


def file_digest(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


def derive_seed(override: int, stream: str) -> int:
    """Independent seed for one sampling stream from a single override seed."""
    entropy = [override, SEED_STREAMS.index(stream)]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


@contextmanager
def _section(key: str) -> Iterator[None]:
    """Report failures while building one part of the scenario under its key."""
    try:
        yield
    except UnknownProtocolError:
        raise
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        raise ScenarioParseError(
            f"invalid '{key}': {first.get('msg', 'validation error')}",
            details={
                "key": key,
                "constraint": first.get("msg"),
                "errors": exc.error_count(),
            },
        ) from exc
    except PopularityModelError as exc:
        raise ScenarioParseError(
            f"invalid '{key}': {exc.message}",
            details={"key": key, "constraint": exc.error_type.value, **exc.details},
        ) from exc


def decode_document(content: bytes | str) -> ScenarioFile:
    """
    Decode and validate the JSON text of a scenario file.

    Raises:
        ScenarioParseError: If the text is not valid JSON, with line and column
        pydantic.ValidationError: If the document does not match the schema
    """
    try:
        raw = json.loads(content)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            details={"line": exc.lineno, "column": exc.colno},
        ) from exc
    if not isinstance(raw, dict):
        raise ScenarioParseError(
            "scenario file must contain a JSON object", details={"key": "<root>"}
        )
    return ScenarioFile.model_validate(raw)


def _resolve_seeds(
    document: ScenarioFile, seed_override: Optional[int]
) -> Dict[str, Optional[int]]:
    declared = {
        "graph": (
            document.graph.seed
            if isinstance(document.graph, ErdosRenyiGraphSpec)
            else None
        ),
        "params": (
            document.params.seed
            if isinstance(document.params, ProtocolParamsSpec)
            else None
        ),
        "x0": (
            document.x0.uniform_seed
            if isinstance(document.x0, UniformStateSpec)
            else None
        ),
    }
    if seed_override is None:
        return declared
    return {
        stream: None if seed is None else derive_seed(seed_override, stream)
        for stream, seed in declared.items()
    }


def build_scenario(
    document: ScenarioFile, seed_override: Optional[int] = None
) -> Tuple[Scenario, Dict[str, Optional[int]]]:
    """
    Turn a validated document into a Scenario.

    Args:
        document: Validated scenario file
        seed_override: Replaces every seed of the file by one derived from it

    Returns:
        The scenario and the seeds actually used per sampling stream

    Raises:
        ScenarioParseError: If a part violates its constraints; the details
            name the offending key
        UnknownProtocolError: If the params protocol is not known
    """
    seeds = _resolve_seeds(document, seed_override)

    with _section("graph"):
        spec = document.graph
        if isinstance(spec, ErdosRenyiGraphSpec):
            graph_seed = seeds["graph"]
            seed = spec.seed if graph_seed is None else graph_seed
            P = erdos_renyi(spec.n, spec.p, seed)
        elif spec.normalize:
            P = build_row_stochastic(spec.rows)
        else:
            P = RowStochasticMatrix(entries=spec.rows)
    n = P.n

    with _section("params"):
        if isinstance(document.params, ExplicitParamsSpec):
            params = ModelParams(
                alpha=document.params.alpha,
                beta=document.params.beta,
                gamma=document.params.gamma,
            )
        else:
            protocol = document.params.protocol
            if protocol not in PROTOCOLS:
                raise UnknownProtocolError(
                    f"unknown protocol '{protocol}'",
                    details={"key": "params.protocol", "known": list(PROTOCOLS)},
                )
            params = draw_weights(
                protocol,
                n,
                np.random.default_rng(seeds["params"]),
                tuple(document.params.zero_weights),
            )

    with _section("quality"):
        q = QualityVector(q=document.quality)

    with _section("x0"):
        if isinstance(document.x0, ExplicitStateSpec):
            x0 = AttentionState(x=document.x0.explicit)
        else:
            raw = np.random.default_rng(seeds["x0"]).uniform(0.0, 1.0, size=(n, q.m))
            if document.x0.unit_lower_bound:
                raw = lift_to_unit_totals(raw)
            x0 = AttentionState(x=raw)

    if document.seed is not None:
        seed: Optional[int] = document.seed
    elif seed_override is not None:
        seed = seed_override
    else:
        drawn = (seeds["x0"], seeds["params"], seeds["graph"])
        seed = next((s for s in drawn if s is not None), None)

    with _section("scenario"):
        scenario = Scenario(
            P=P,
            params=params,
            q=q,
            x0=x0,
            horizon=document.horizon,
            tol=document.tol,
            seed=seed,
            record_every=document.record_every,
        )
    return scenario, seeds


def load_scenario(
    path: Path | str, seed_override: Optional[int] = None
) -> LoadedScenario:
    """
    Read, validate and build the scenario stored at `path`.

    Raises:
        ScenarioParseError: If the file cannot be read or parsed
        pydantic.ValidationError: If the document does not match the schema
    """
    path = Path(path)
    try:
        content = path.read_bytes()
    except OSError as exc:
        raise ScenarioParseError(
            f"cannot read scenario file: {exc.strerror or exc}",
            details={"path": str(path)},
        ) from exc

    scenario, seeds = build_scenario(decode_document(content), seed_override)
    logger.info(
        "scenario_loaded",
        path=str(path),
        users=scenario.n,
        influencers=scenario.m,
        horizon=scenario.horizon,
    )
    return LoadedScenario(scenario=scenario, digest=file_digest(content), seeds=seeds)


def scenario_to_document(sc: Scenario) -> ScenarioFile:
    """Fully explicit document that parses back to the same scenario."""
    return ScenarioFile(
        graph=ExplicitGraphSpec(
            type="explicit", rows=sc.P.entries.tolist(), normalize=False
        ),
        params=ExplicitParamsSpec(
            alpha=sc.params.alpha.tolist(),
            beta=sc.params.beta.tolist(),
            gamma=sc.params.gamma.tolist(),
        ),
        quality=sc.q.q.tolist(),
        x0=ExplicitStateSpec(explicit=sc.x0.x.tolist()),
        horizon=sc.horizon,
        tol=sc.tol,
        record_every=sc.record_every,
        seed=sc.seed,
    )


def write_scenario(sc: Scenario, path: Path | str) -> Path:
    """Write `sc` as an explicit scenario file."""
    path = Path(path)
    document = scenario_to_document(sc).model_dump(mode="json", exclude_none=True)
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return path
