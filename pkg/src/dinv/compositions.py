"""Enumeration of weighted integer compositions.

A weighted composition of `total` over positive `weights` is a tuple t of
non-negative integers, one per weight, with sum(t[k] * weights[k]) == total.
These index the terms of the closed-form basis constructions and the
combinatorial identity checks, so the enumeration order must be stable:
tuples are produced in lexicographically descending order.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def weighted_compositions(total: int, weights: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All t >= 0 (componentwise) with sum(t[k]*weights[k]) == total,
    lexicographically descending."""
    if total < 0:
        raise ValueError(f"total must be non-negative, got {total}")
    if any(w < 1 for w in weights):
        raise ValueError(f"weights must be positive integers, got {list(weights)}")

    def rec(idx: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if idx == len(weights) - 1:
            w = weights[idx]
            if remaining % w == 0:
                yield (remaining // w,)
            return
        w = weights[idx]
        for v in range(remaining // w, -1, -1):
            for rest in rec(idx + 1, remaining - v * w):
                yield (v,) + rest

    if not weights:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)
