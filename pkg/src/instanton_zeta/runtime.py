"""Parallelism cap shared by the verification drivers.

INSTANTON_ZETA_THREADS limits the worker count; unset or 1 means serial.
Results always come back in submission order, so output is deterministic
either way."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap():
    raw = os.environ.get("INSTANTON_ZETA_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, n)


def parallel_map(fn, items):
    items = list(items)
    cap = thread_cap()
    if cap <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))
