"""Run manifests written next to every command's outputs."""

import logging
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from hyptree import __version__
from hyptree.exceptions import ParseError
from hyptree.models import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def _plain(value: Any) -> Any:
    """Convert CLI values to JSON-friendly ones."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def build_manifest(
    command: str,
    seed: int,
    arguments: Dict[str, Any],
    hyperparameters: Dict[str, Any],
    inputs: Iterable[Union[str, Path]] = (),
    outputs: Iterable[Union[str, Path]] = (),
) -> RunManifest:
    """Describe a run completely enough to repeat it."""
    return RunManifest(
        command=command,
        seed=seed,
        arguments={k: _plain(v) for k, v in arguments.items()},
        hyperparameters={k: _plain(v) for k, v in hyperparameters.items()},
        inputs=[str(p) for p in inputs],
        outputs=[str(p) for p in outputs],
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def write_manifest(manifest: RunManifest, out_dir: Union[str, Path]) -> Path:
    path = Path(out_dir) / MANIFEST_NAME
    path.write_text(manifest.model_dump_json(indent=2) + "\n")
    logger.debug("Wrote manifest %s", path)
    return path


def read_manifest(path: Union[str, Path]) -> RunManifest:
    """Load a manifest; a directory is taken to contain ``manifest.json``.

    Raises:
        ParseError: If the file is not a valid manifest
    """
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    try:
        return RunManifest.model_validate_json(path.read_text())
    except ValueError as e:
        raise ParseError("Invalid manifest", f"{path}: {e}")


def replay_argv(
    manifest: RunManifest, overrides: Dict[str, Any], flags: Dict[str, str]
) -> List[str]:
    """Command-line arguments that repeat the recorded run.

    ``flags`` maps argument names to their option strings; names without an
    entry become ``--name`` with dashes for underscores. Lists repeat the
    flag and unset values are left out.
    """
    argv = [manifest.command]
    for name, value in {**manifest.arguments, **overrides}.items():
        if value is None or value == []:
            continue
        flag = flags.get(name, "--" + name.replace("_", "-"))
        for item in value if isinstance(value, list) else [value]:
            argv.extend([flag, str(_plain(item))])
    return argv
