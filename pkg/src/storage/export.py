"""CSV and JSON writers for trajectories, reports and matrices."""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from src.constants import (
    CSV_FLOAT_FORMAT,
    POPULARITY_CSV_HEADER,
    STATE_CSV_HEADER,
    TOTALS_CSV_HEADER,
)
from src.models.errors import InvalidInputError
from src.models.graph import RowStochasticMatrix
from src.models.simulation import Trajectory
from src.numerics.graph import build_row_stochastic


def format_float(value: float) -> str:
    """Seventeen significant digits, enough to round-trip a double."""
    return format(float(value), CSV_FLOAT_FORMAT)


def _write_rows(
    path: Path, header: Optional[Sequence[str]], rows: Iterable[List[str]]
) -> Path:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if header is not None:
            writer.writerow(header)
        writer.writerows(rows)
    return path


def write_state_csv(traj: Trajectory, path: Path) -> Path:
    """One row per recorded time, user and influencer."""
    rows = (
        [str(t), str(v), str(i), format_float(state.x[v, i])]
        for t, state in zip(traj.times, traj.states)
        for v in range(state.n)
        for i in range(state.m)
    )
    return _write_rows(path, STATE_CSV_HEADER, rows)


def write_popularity_csv(traj: Trajectory, path: Path) -> Path:
    rows = (
        [str(t), str(i), format_float(pi)]
        for t, vector in zip(traj.times, traj.popularity)
        for i, pi in enumerate(vector.pi)
    )
    return _write_rows(path, POPULARITY_CSV_HEADER, rows)


def write_totals_csv(traj: Trajectory, path: Path) -> Path:
    rows = (
        [str(t), str(v), format_float(z)]
        for t, totals in zip(traj.times, traj.totals)
        for v, z in enumerate(totals.z)
    )
    return _write_rows(path, TOTALS_CSV_HEADER, rows)


def to_json_text(payload: BaseModel | Dict[str, Any], indent: int | None = 2) -> str:
    """Serialize a model or plain dictionary with NaN and infinity rejected."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, indent=indent, allow_nan=False, default=_json_default)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def write_json(payload: BaseModel | Dict[str, Any], path: Path) -> Path:
    path.write_text(to_json_text(payload) + "\n", encoding="utf-8")
    return path


def matrix_to_json(P: RowStochasticMatrix) -> Dict[str, Any]:
    return {"n": P.n, "rows": P.entries.tolist()}


def matrix_from_json(document: Dict[str, Any]) -> RowStochasticMatrix:
    """
    Matrix from {"n": int, "rows": [[...], ...]}.

    Raises:
        InvalidInputError: If `n` disagrees with the rows
    """
    rows = document.get("rows")
    n = document.get("n")
    if not isinstance(rows, list) or n != len(rows):
        raise InvalidInputError(
            "matrix document needs 'rows' with exactly 'n' rows",
            details={"n": n, "rows": len(rows) if isinstance(rows, list) else None},
        )
    return RowStochasticMatrix(entries=rows)


def write_matrix_csv(P: RowStochasticMatrix, path: Path) -> Path:
    """One matrix row per line, comma separated, no header."""
    rows = ([format_float(v) for v in row] for row in P.entries)
    return _write_rows(path, None, rows)


def read_matrix_csv(path: Path, normalize: bool = False) -> RowStochasticMatrix:
    with path.open(newline="", encoding="utf-8") as handle:
        rows = [[float(v) for v in row] for row in csv.reader(handle) if row]
    if normalize:
        return build_row_stochastic(rows)
    return RowStochasticMatrix(entries=rows)
