"""Pytest configuration and shared fixtures."""

import json
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List

import numpy as np
import pytest

from src.config import Settings, settings
from src.models.graph import RowStochasticMatrix
from src.models.simulation import ProtocolSpec, Scenario
from src.models.state import AttentionState, ModelParams, QualityVector
from src.numerics.dynamics import totals
from src.numerics.equilibria import classify_regime, schur_certificate
from src.simulation.scenarios import sample_scenario
from src.utils.logging import configure_logging

FIG1_QUALITY = [0.3, 0.7, 0.5]


@pytest.fixture(autouse=True, scope="session")
def quiet_logging() -> None:
    """Route logs to stderr so command output on stdout stays parseable."""
    configure_logging(log_level="WARNING", include_timestamp=False)


@pytest.fixture(autouse=True)
def restore_settings() -> Iterator[None]:
    """Undo changes the CLI makes to the global settings."""
    snapshot = settings.model_dump()
    yield
    for key, value in snapshot.items():
        setattr(settings, key, value)


@pytest.fixture
def mock_settings() -> Settings:
    """Settings with debug logging for tests."""
    return Settings(log_level="DEBUG", jobs=2)


@pytest.fixture
def ring3() -> RowStochasticMatrix:
    """Directed 3-cycle: strongly connected but periodic."""
    return RowStochasticMatrix(
        entries=[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]
    )


@pytest.fixture
def lazy_ring3() -> RowStochasticMatrix:
    """3-cycle with a self-loop at node 0, which makes the chain aperiodic."""
    return RowStochasticMatrix(
        entries=[[0.5, 0.5, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]
    )


@pytest.fixture
def small_params() -> ModelParams:
    return ModelParams(
        alpha=[0.5, 0.4, 0.3],
        beta=[0.3, 0.3, 0.3],
        gamma=[0.2, 0.3, 0.4],
    )


@pytest.fixture
def small_quality() -> QualityVector:
    return QualityVector(q=[0.6, 0.8])


@pytest.fixture
def small_state() -> AttentionState:
    return AttentionState(x=[[0.2, 0.9], [0.5, 0.5], [1.0, 0.1]])


@pytest.fixture
def small_scenario(
    lazy_ring3: RowStochasticMatrix,
    small_params: ModelParams,
    small_quality: QualityVector,
    small_state: AttentionState,
) -> Scenario:
    """Three users and two influencers in the general regime."""
    return Scenario(
        P=lazy_ring3,
        params=small_params,
        q=small_quality,
        x0=small_state,
        horizon=400,
        tol=1e-10,
    )


def first_certified(protocol: str, start: int = 0, **fields: Any) -> Scenario:
    """First sampled scenario, from seed `start` on, whose hypotheses hold."""
    spec = ProtocolSpec(protocol=protocol, **fields)
    for seed in range(start, start + 500):
        sc = sample_scenario(spec, seed)
        regime = classify_regime(sc.params, strict=False)
        certificate = schur_certificate(
            sc.params, sc.P, regime, q=sc.q, z0=totals(sc.x0)
        )
        if certificate.hypotheses_hold:
            return sc
    raise AssertionError(f"no certified {protocol} scenario found")


def certified_scenarios(
    protocol: str, count: int, **fields: Any
) -> List[Scenario]:
    """`count` distinct certified scenarios of a protocol."""
    found: List[Scenario] = []
    start = 0
    while len(found) < count:
        sc = first_certified(protocol, start=start, **fields)
        found.append(sc)
        start = int(sc.seed) + 1
    return found


@pytest.fixture
def fig1_scenario() -> Scenario:
    return sample_scenario(
        ProtocolSpec(protocol="fig1", quality=FIG1_QUALITY, horizon=1000, tol=1e-12),
        seed=2024,
    )


@pytest.fixture
def fig2_scenario() -> Scenario:
    return first_certified("fig2", horizon=10_000, tol=1e-12, record_every=100)


@pytest.fixture
def general_scenario() -> Scenario:
    return first_certified(
        "fig3",
        quality=[0.6, 0.7, 0.5],
        unit_lower_bound=True,
        horizon=3000,
        tol=1e-12,
        record_every=50,
    )


@pytest.fixture
def fig1_document() -> Dict[str, Any]:
    """Scenario file in the fig1 setup."""
    return {
        "graph": {"type": "erdos_renyi", "n": 20, "p": 0.2, "seed": 7},
        "params": {"protocol": "fig1", "seed": 3},
        "quality": FIG1_QUALITY,
        "x0": {"uniform_seed": 11},
        "horizon": 1000,
        "tol": 1e-10,
    }


@pytest.fixture
def explicit_document() -> Dict[str, Any]:
    """Small fully explicit scenario in the general regime."""
    return {
        "graph": {
            "type": "explicit",
            "rows": [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]],
        },
        "params": {
            "alpha": [0.5, 0.4, 0.3],
            "beta": [0.3, 0.3, 0.3],
            "gamma": [0.2, 0.3, 0.4],
        },
        "quality": [0.6, 0.8],
        "x0": {"explicit": [[0.6, 0.9], [0.5, 0.7], [1.0, 0.4]]},
        "horizon": 400,
        "tol": 1e-10,
    }


@pytest.fixture
def write_document(tmp_path: Path) -> Callable[..., Path]:
    """Write a scenario document (or raw text) into the test directory."""

    def _write(document: Dict[str, Any] | str, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return path

    return _write


def error_lines(stderr: str) -> List[Dict[str, Any]]:
    """One-line JSON error responses printed on standard error."""
    found = []
    for line in stderr.splitlines():
        line = line.strip()
        if not line.startswith("{"):
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError:
            continue
        if "event" not in payload and {"error", "exit_code"} <= payload.keys():
            found.append(payload)
    return found


def random_stochastic(rng: np.random.Generator, n: int, density: float = 0.5):
    """Random row-stochastic matrix whose support always has a self-loop at 0."""
    weights = rng.uniform(0.0, 1.0, size=(n, n)) * (rng.uniform(size=(n, n)) < density)
    weights[0, 0] = 1.0
    weights[weights.sum(axis=1) == 0, 0] = 1.0
    return RowStochasticMatrix(entries=weights / weights.sum(axis=1, keepdims=True))
