"""Construction and verification of A-coverings"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from models.acover import ACoverChart, build_acover, verify_acover
from models.divfan import DivisorialFan
from models.documents import acover_to_document
from tools.loading import error_report, internal_error_report, load
from utils.errors import ACoverError, PreconditionError
from utils.reports import Report

logger = logging.getLogger("tfan")


def construct_acover(path: str, threads: Optional[int] = None) -> Dict[str, Any]:
    """
    Build and certify an A-covering of a smooth complete divisorial fan

    Args:
        path: divisorial fan document
        threads: worker bound, TFAN_THREADS when None

    Returns:
        Report dict carrying the charts; verify-acover reads it back
    """
    success, data = load(path, "fan")
    if not success:
        return error_report("acover", path, data)

    fan: DivisorialFan = data["value"]
    report = Report("acover")
    try:
        certificate = build_acover(fan, threads)
    except PreconditionError as e:
        for rule, location, message in e.findings:
            report.add_error("precondition", location, f"{rule}: {message}")
        if not e.findings:
            report.add_error("precondition", path, str(e))
        logger.error(f"Fan '{path}' does not admit the construction: {e}")
        return report.to_dict()
    except ACoverError as e:
        report.add_error("acover", path, str(e))
        logger.error(f"A-cover construction failed for '{path}': {e}")
        return report.to_dict()
    except Exception as e:
        return internal_error_report("acover", path, e)

    report.extend(certificate.report)
    report.payload.update(acover_to_document(certificate))
    report.payload["summary"] = {
        "charts": len(certificate.charts),
        "by_origin": _origin_counts(certificate.charts),
        "findings": len(report.findings),
    }
    logger.info(f"Fan '{path}': {len(certificate.charts)} charts, {report.status}")
    return report.to_dict()


def _origin_counts(charts: Sequence[ACoverChart]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for chart in charts:
        counts[chart.origin.kind] = counts.get(chart.origin.kind, 0) + 1
    return dict(sorted(counts.items()))


def verify_acover_document(fan_path: str, charts_path: str) -> Dict[str, Any]:
    """
    Check an externally supplied covering against a fan

    Args:
        fan_path: divisorial fan document
        charts_path: acover document, e.g. the report of the acover command

    Returns:
        Report dict with coverage_ok and markings_ok
    """
    success, data = load(fan_path, "fan")
    if not success:
        return error_report("verify-acover", fan_path, data)
    fan: DivisorialFan = data["value"]

    success, data = load(charts_path, "charts")
    if not success:
        return error_report("verify-acover", charts_path, data)
    charts: List[ACoverChart] = data["value"]

    if charts and charts[0].divisor.rank != fan.rank:
        report = Report("verify-acover")
        report.add_error("input", charts_path, f"charts have rank {charts[0].divisor.rank}, fan has {fan.rank}")
        return report.to_dict()

    try:
        report = verify_acover(fan, charts)
    except Exception as e:
        return internal_error_report("verify-acover", charts_path, e)
    logger.info(f"Covering '{charts_path}' of '{fan_path}': {report.status}")
    return report.to_dict()
