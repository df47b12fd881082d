"""Deterministic worker-pool helpers.

Results are collected into a preallocated list indexed by input position,
so the output is identical for any worker count, including 1 (which runs
inline without a pool).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .errors import ValidationError


def map_indexed(func, items, workers: int = 1) -> list:
    """Apply ``func`` to every item, preserving input order exactly."""
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    items = list(items)
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]
    out = [None] * len(items)

    def _run(idx_item):
        idx, item = idx_item
        out[idx] = func(item)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(_run, enumerate(items)))
    return out
