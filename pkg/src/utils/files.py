"""
File helpers - JSON, JSONL and DOT output, JSON input

A path of "-" means standard output. Relative output paths are resolved in
the output directory (see paths.py).
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Union

from ..errors import InvalidInstance, IoFailure
from .paths import get_paths

logger = logging.getLogger(__name__)

STDOUT = "-"


def write_text(text: str, path: Union[str, Path] = STDOUT) -> str:
    """
    Write text to a file or to stdout

    Args:
        text: Content to write; a trailing newline is added if missing
        path: Destination, "-" for stdout

    Returns:
        The resolved destination as a string

    Raises:
        IoFailure: If the file cannot be written
    """
    if not text.endswith("\n"):
        text += "\n"
    if str(path) == STDOUT:
        sys.stdout.write(text)
        sys.stdout.flush()
        return STDOUT
    target = get_paths().resolve_output(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise IoFailure(f"could not write {target}: {e}") from e
    logger.debug("wrote %d bytes to %s", len(text), target)
    return str(target)


def write_json(data: Any, path: Union[str, Path] = STDOUT) -> str:
    return write_text(json.dumps(data, indent=2, sort_keys=False), path)


def write_jsonl(records: Iterable[Mapping[str, Any]], path: Union[str, Path] = STDOUT) -> str:
    return write_text("\n".join(json.dumps(record) for record in records), path)


def read_json(path: Union[str, Path]) -> Any:
    """
    Parse a JSON document

    Raises:
        IoFailure: If the file cannot be read
        InvalidInstance: If the content is not JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInstance(f"{path} is not valid JSON: {e}") from e
    except OSError as e:
        raise IoFailure(f"could not read {path}: {e}") from e


def read_jsonl(path: Union[str, Path]) -> list:
    """One JSON value per non-empty line"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]
    except json.JSONDecodeError as e:
        raise InvalidInstance(f"{path} is not valid JSONL: {e}") from e
    except OSError as e:
        raise IoFailure(f"could not read {path}: {e}") from e
