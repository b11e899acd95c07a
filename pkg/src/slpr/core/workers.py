"""
Worker pool sizing and order-preserving parallel map.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(requested: Optional[int] = None) -> int:
    """Worker count: explicit request, else SLPR_THREADS; 0 means one per CPU."""
    count = settings.slpr_threads if requested is None else requested
    if count < 0:
        raise ValueError(f"Worker count must be >= 0, got {count}")
    return count or (os.cpu_count() or 1)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """Apply ``fn`` to every item; results come back in input order."""
    items = list(items)
    count = min(resolve_workers(workers), max(len(items), 1))
    if count <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Running {len(items)} tasks on {count} workers")
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, items))
