"""Optional process pool for independent searches.

Parallelism defaults to the APERIODIC_KIT_JOBS environment variable; every
use site is a map over independent instances whose results are merged into
order-independent sets, so the answer never depends on the job count.
"""

from __future__ import annotations

import os
from multiprocessing import Pool
from typing import Callable, Iterable


def default_jobs() -> int:
    raw = os.environ.get("APERIODIC_KIT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable, jobs: int | None = None) -> list:
    items = list(items)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with Pool(jobs) as pool:
        return pool.map(fn, items)
