"""Document I/O for tfan

This module reads and writes the JSON documents tfan works with (divisorial
fans, toric fans, coverings and reports) and holds the environment-based
configuration. Reads return (success, data) tuples; failures carry an
{"error": ...} dict instead of raising.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Tuple

from dotenv import load_dotenv

load_dotenv()

# Constants
THREADS_DEFAULT = 1
LOG_LEVEL_DEFAULT = "INFO"


def _threads_from_env() -> int:
    raw = os.getenv("TFAN_THREADS", str(THREADS_DEFAULT))
    try:
        value = int(raw)
    except ValueError:
        logging.warning(f"TFAN_THREADS={raw!r} is not an integer, using {THREADS_DEFAULT}")
        return THREADS_DEFAULT
    if value < 1:
        logging.warning(f"TFAN_THREADS={value} is not positive, using {THREADS_DEFAULT}")
        return THREADS_DEFAULT
    return value


# Upper bound on worker threads for per-member and per-chart work
THREADS = _threads_from_env()

LOG_LEVEL = os.getenv("TFAN_LOG_LEVEL", LOG_LEVEL_DEFAULT).upper()

# Default of --close-intersections; fans are validated as given unless set
CLOSE_INTERSECTIONS = os.getenv("TFAN_CLOSE_INTERSECTIONS", "false").lower() == "true"


def load_document(path: str) -> Tuple[bool, Dict[str, Any]]:
    """
    Read a UTF-8 JSON document

    Args:
        path: file to read

    Returns:
        Tuple of (success, data) where data is either the parsed object or an error dict
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        return (False, {"error": f"File not found: {path}"})
    except (OSError, UnicodeDecodeError) as e:
        return (False, {"error": f"Cannot read {path}: {e}"})

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        return (
            False,
            {"error": f"Invalid JSON in {path} at line {e.lineno}, column {e.colno}: {e.msg}"},
        )

    if not isinstance(data, dict):
        return (False, {"error": f"Top level of {path} must be an object"})
    return (True, data)


def dump_document(data: Dict[str, Any]) -> str:
    """Serialize a document; equal inputs give byte-identical text"""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_document(path: str, data: Dict[str, Any]) -> Tuple[bool, Dict[str, Any]]:
    """
    Write a document atomically (temporary file in the target directory, then rename)

    Args:
        path: destination file
        data: JSON-serializable document

    Returns:
        Tuple of (success, info) where info is {"path": ...} or an error dict
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(dump_document(data))
        os.replace(tmp_name, target)
    except OSError as e:
        return (False, {"error": f"Cannot write {path}: {e}"})
    logging.getLogger("tfan").debug(f"Wrote {path}")
    return (True, {"path": str(target)})
