"""Deterministic partitioning of index sweeps across worker threads.

Sweeps are split into contiguous index ranges and the per-range results
are merged back in range order, so the output is identical to a
sequential run no matter how many workers are used.  The worker count is
capped by the ``SBFIG_THREADS`` environment variable.
"""

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import InputError

ENV_THREADS = "SBFIG_THREADS"


def worker_count():
    """Number of sweep workers: ``SBFIG_THREADS`` if set, else a small default."""
    raw = os.environ.get(ENV_THREADS)
    if raw is not None and raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            raise InputError(f"{ENV_THREADS} must be an integer, got {raw!r}")
    return min(4, os.cpu_count() or 1)


def split_ranges(n, parts):
    """Split range(n) into at most `parts` contiguous, nonempty ranges."""
    parts = max(1, min(parts, n)) if n else 1
    base, extra = divmod(n, parts)
    ranges = []
    lo = 0
    for p in range(parts):
        hi = lo + base + (1 if p < extra else 0)
        if hi > lo:
            ranges.append(range(lo, hi))
        lo = hi
    return ranges


def map_ranges(n, fn):
    """Apply `fn` to contiguous subranges of range(n); results in range order."""
    ranges = split_ranges(n, worker_count())
    if len(ranges) <= 1:
        return [fn(r) for r in ranges]
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        return list(pool.map(fn, ranges))
