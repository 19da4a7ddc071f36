"""Run manifests: the reproducibility receipt written next to every output."""

from pathlib import Path
from typing import Dict, List, Optional

from src.constants import VERSION
from src.models.files import RunManifest
from src.storage.export import write_json
from src.storage.scenario_file import file_digest

MANIFEST_NAME = "manifest.json"


def build_manifest(
    command: str,
    input_path: Path,
    digest: str,
    seeds: Dict[str, Optional[int]],
    outputs: List[Path],
    seed_override: Optional[int] = None,
    exit_code: int = 0,
) -> RunManifest:
    return RunManifest(
        command=command,
        input_path=str(input_path),
        input_digest=digest,
        resolved_seeds=seeds,
        seed_override=seed_override,
        version=VERSION,
        outputs=[path.name for path in outputs],
        exit_code=exit_code,
    )


def write_manifest(manifest: RunManifest, out_dir: Path) -> Path:
    return write_json(manifest, out_dir / MANIFEST_NAME)


def verify_manifest(manifest: RunManifest, input_path: Optional[Path] = None) -> bool:
    """Whether the input file still has the digest recorded in the manifest."""
    path = Path(manifest.input_path) if input_path is None else input_path
    return file_digest(path.read_bytes()) == manifest.input_digest
