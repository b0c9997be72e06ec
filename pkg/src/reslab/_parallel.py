"""Deterministic parallel map over independent tasks."""

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    """Workers allowed by RESLAB_THREADS (0 or unset means one per CPU)."""
    raw = os.environ.get("RESLAB_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def ordered_map(func, items, workers=None):
    """``[func(x) for x in items]``, possibly in worker processes.

    Results always come back in input order, so any reduction done by the
    caller is independent of scheduling.
    """
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
