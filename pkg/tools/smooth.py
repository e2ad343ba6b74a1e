"""Fan-level smoothness"""

import logging
from typing import Any, Dict, Optional

from models.divfan import DivisorialFan, is_smooth_fan
from tools.loading import error_report, internal_error_report, load

logger = logging.getLogger("tfan")


def check_smooth(path: str, threads: Optional[int] = None) -> Dict[str, Any]:
    """
    Decide whether the T-variety of a divisorial fan is smooth

    Args:
        path: divisorial fan document
        threads: worker bound, TFAN_THREADS when None

    Returns:
        Report dict; precondition failures make it an error
    """
    success, data = load(path, "fan")
    if not success:
        return error_report("smooth", path, data)

    fan: DivisorialFan = data["value"]
    try:
        report = is_smooth_fan(fan, threads)
    except Exception as e:
        return internal_error_report("smooth", path, e)
    logger.info(f"Fan '{path}' smoothness: {report.status}")
    return report.to_dict()
