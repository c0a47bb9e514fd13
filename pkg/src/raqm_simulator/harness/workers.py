"""Fan-out of independent work items over worker processes."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

_logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_items(function: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Apply ``function`` to every item and return the results in input order.

    ``function`` must be picklable when ``workers > 1``.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    _logger.debug(f"Distributing {len(items)} items over {workers} workers.")
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items, chunksize=chunksize))
