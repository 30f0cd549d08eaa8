from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def effective_n_jobs(n_jobs: int | None) -> int:
    """Resolve an sklearn-style ``n_jobs`` value to a positive worker count."""
    if n_jobs is None or n_jobs == 0:
        return 1
    if n_jobs < 0:
        return max(1, (os.cpu_count() or 1) + 1 + n_jobs)
    return int(n_jobs)


def chunk(items: Sequence[T], n_chunks: int) -> list[Sequence[T]]:
    """Split ``items`` into at most ``n_chunks`` contiguous, order-preserving slices."""
    n = len(items)
    if n == 0:
        return []
    n_chunks = max(1, min(n_chunks, n))
    size, extra = divmod(n, n_chunks)
    out = []
    start = 0
    for i in range(n_chunks):
        stop = start + size + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def map_chunks(func: Callable[[Sequence[T]], R], items: Sequence[T], n_jobs: int | None) -> list[R]:
    """Apply ``func`` to contiguous shards of ``items``; results come back in shard order."""
    workers = effective_n_jobs(n_jobs)
    shards = chunk(items, workers)
    if workers == 1 or len(shards) <= 1:
        return [func(s) for s in shards]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, shards))


def map_ordered(func: Callable[[T], R], items: Iterable[T], n_jobs: int | None) -> list[R]:
    """Element-wise parallel map preserving input order."""
    items = list(items)
    results = map_chunks(lambda shard: [func(x) for x in shard], items, n_jobs)
    return [r for part in results for r in part]
