"""Handler for the gen-graph command."""

from pathlib import Path
from typing import Optional

from src.models.errors import ExitCode, InvalidInputError
from src.numerics.graph import erdos_renyi
from src.storage.export import matrix_to_json, write_json, write_matrix_csv
from src.utils.formatters import print_result
from src.utils.logging import get_logger

logger = get_logger(__name__)

GRAPH_JSON = "graph.json"
GRAPH_CSV = "graph.csv"


def cmd_gen_graph(n: int, p: float, seed: int, out_dir: Optional[Path] = None) -> int:
    """
    Draw an Erdős-Rényi influence matrix and print it as JSON.

    With an output directory the matrix is also written as JSON and CSV.

    Raises:
        InvalidInputError: If n < 1, p is outside [0, 1] or the seed is negative
    """
    if n < 1 or not 0.0 <= p <= 1.0 or seed < 0:
        raise InvalidInputError(
            "gen-graph needs n >= 1, 0 <= p <= 1 and a nonnegative seed",
            details={"n": n, "p": p, "seed": seed},
        )
    P = erdos_renyi(n, p, seed)
    document = matrix_to_json(P)

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_json(document, out_dir / GRAPH_JSON)
        write_matrix_csv(P, out_dir / GRAPH_CSV)
        logger.info("graph_written", out_dir=str(out_dir), n=n)

    print_result(document)
    return ExitCode.OK
