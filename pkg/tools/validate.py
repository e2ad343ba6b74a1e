"""Validation of divisorial fan documents"""

import logging
from typing import Any, Dict, Optional

from api.client import CLOSE_INTERSECTIONS
from models.divfan import DivisorialFan, validate
from tools.loading import error_report, internal_error_report, load

logger = logging.getLogger("tfan")


def validate_fan(path: str, close_intersections: Optional[bool] = None) -> Dict[str, Any]:
    """
    Check properness, the slice rule and the degree rule

    Args:
        path: divisorial fan document
        close_intersections: add pairwise intersections first; TFAN_CLOSE_INTERSECTIONS when None

    Returns:
        Report dict with status pass, fail or error
    """
    success, data = load(path, "fan")
    if not success:
        return error_report("validate", path, data)

    fan: DivisorialFan = data["value"]
    try:
        if close_intersections if close_intersections is not None else CLOSE_INTERSECTIONS:
            fan = fan.close_intersections()
        report = validate(fan)
    except Exception as e:
        return internal_error_report("validate", path, e)

    report.payload["summary"] = {"members": len(fan.members), "findings": len(report.findings)}
    logger.info(f"Fan '{path}' validated: {report.status}")
    return report.to_dict()
