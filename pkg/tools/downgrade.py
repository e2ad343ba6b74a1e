"""Toric downgrade: divisorial fan documents from complete toric fans"""

import logging
from typing import Any, Dict

from models.documents import fan_to_document
from models.toric import ToricFan, toric_downgrade
from tools.loading import load
from utils.errors import TFanError

logger = logging.getLogger("tfan")


def downgrade_toric_fan(path: str, height_index: int = -1) -> Dict[str, Any]:
    """
    Divisorial fan of a complete toric fan with the torus of one coordinate removed

    Args:
        path: toric fan document
        height_index: the coordinate used as height, last by default

    Returns:
        Divisorial fan document, or an error dict
    """
    success, data = load(path, "toric")
    if not success:
        return {"error": data.get("error", f"Failed to read {path}"), "position": data.get("position", "")}

    toric: ToricFan = data["value"]
    if not -toric.rank <= height_index < toric.rank:
        return {"error": f"height index {height_index} out of range for rank {toric.rank}"}
    try:
        fan = toric_downgrade(toric, height_index)
    except TFanError as e:
        logger.error(f"Cannot downgrade '{path}': {e}")
        return {"error": str(e)}
    except Exception as e:
        logger.error(f"Unexpected error while downgrading '{path}': {e}")
        return {"error": f"Unexpected error: {type(e).__name__}: {e}"}

    logger.info(f"Downgraded '{path}' to {len(fan.members)} members")
    return fan_to_document(fan)
