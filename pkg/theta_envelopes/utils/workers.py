import logging
from concurrent.futures import ProcessPoolExecutor, as_completed

logger = logging.getLogger(__name__)


def run_ordered(func, items, workers: int = 1) -> list:
    """
    Applies func to every item, in a process pool when workers > 1.

    Results come back in the order of items whatever order the workers finish in.
    func must be picklable (a module-level function or a functools.partial of one).
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    results = [None] * len(items)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(func, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    logger.debug("ran %d tasks on %d workers", len(items), workers)
    return results


def first_result(func, items, workers: int = 1):
    """
    The first non-None func(item) in item order, or None.

    With a pool, later items may run speculatively; their results are discarded once
    an earlier item has produced a hit. Pending items are then cancelled, while items
    already running are awaited before returning.
    """
    items = list(items)
    if workers <= 1:
        for item in items:
            result = func(item)
            if result is not None:
                return result
        return None
    executor = ProcessPoolExecutor(max_workers=workers)
    try:
        for future in [executor.submit(func, item) for item in items]:
            result = future.result()
            if result is not None:
                return result
        return None
    finally:
        executor.shutdown(wait=True, cancel_futures=True)
