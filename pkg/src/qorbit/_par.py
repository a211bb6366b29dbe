"""Deterministic chunked parallelism over integer index ranges.

Chunks are contiguous ranges merged in chunk order, so results never depend
on worker count or scheduling; workers share nothing mutable.
"""

from __future__ import annotations

from multiprocessing import get_context
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Partition range(total) into at most `parts` contiguous (lo, hi) pieces."""
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def map_chunks(fn: Callable[[T], R], args_list: Sequence[T], workers: int) -> list[R]:
    """Apply fn to each args tuple, preserving order; fork a pool if asked."""
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    mp = get_context("fork")
    with mp.Pool(processes=workers) as pool:
        return pool.map(fn, args_list)
