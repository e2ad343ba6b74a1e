"""Loading input documents for the tfan commands"""

import logging
from typing import Any, Dict, Tuple

from api.client import load_document
from models.documents import parse_charts, parse_fan, parse_toric_fan
from utils.errors import DocumentError, TFanError
from utils.reports import Report

logger = logging.getLogger("tfan")

PARSERS = {
    "fan": parse_fan,
    "toric": parse_toric_fan,
    "charts": parse_charts,
}


def load(path: str, what: str) -> Tuple[bool, Dict[str, Any]]:
    """
    Read and parse a document

    Args:
        path: file to read
        what: "fan", "toric" or "charts"

    Returns:
        Tuple of (success, data); data is {"value": parsed} or an error dict
        with "error" and "position"
    """
    success, data = load_document(path)
    if not success:
        return (False, {"error": data.get("error", f"Failed to read {path}"), "position": ""})

    try:
        return (True, {"value": PARSERS[what](data)})
    except DocumentError as e:
        return (False, {"error": str(e), "position": e.position})
    except TFanError as e:
        return (False, {"error": str(e), "position": ""})
    except Exception as e:
        return (False, {"error": f"Unexpected error: {type(e).__name__}: {e}", "position": ""})


def error_report(command: str, path: str, data: Dict[str, Any]) -> Dict[str, Any]:
    """Report dict for an unusable input"""
    report = Report(command)
    location = path + (f"#{data['position']}" if data.get("position") else "")
    report.add_error("input", location, data.get("error", "unknown error"))
    logger.error(f"{command}: {location}: {data.get('error')}")
    return report.to_dict()


def internal_error_report(command: str, path: str, error: Exception) -> Dict[str, Any]:
    """Report dict for an unexpected failure while running a command"""
    report = Report(command)
    report.add_error("internal", path, f"Unexpected error: {type(error).__name__}: {error}")
    logger.error(f"{command}: unexpected error on '{path}': {error}")
    return report.to_dict()
