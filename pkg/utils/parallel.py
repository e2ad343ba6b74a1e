"""Bounded thread pool for independent per-member and per-chart work"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from api import client

logger = logging.getLogger("tfan")

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item, results in input order

    Args:
        fn: pure function; exceptions propagate to the caller
        items: work items
        threads: worker bound, TFAN_THREADS when None

    Returns:
        List of results, same order as items
    """
    if threads is None:
        threads = client.THREADS
    workers = max(1, min(threads, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    logger.debug(f"Running {len(items)} tasks on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
