"""Subset plumbing.

Items are labelled ``1..n`` at every public interface and subsets are
returned as sorted tuples.  Internally a subset of an ``n <= 64`` ground set
is a bitmask where bit ``i - 1`` stands for item ``i``.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import GroundSetTooLarge

Subset = tuple[int, ...]

MAX_BITSET = 64
MAX_ENUMERATION = 24


def as_subset(S: Iterable[int], n: int) -> Subset:
    """Validate ``S`` against ``{1..n}`` and return it as a sorted tuple."""
    items = sorted(int(i) for i in S)
    for i in items:
        if not 1 <= i <= n:
            raise ValueError(f"item {i} outside ground set 1..{n}")
    for x, y in zip(items, items[1:]):
        if x == y:
            raise ValueError(f"item {x} repeated in subset")
    return tuple(items)


def to_mask(S: Iterable[int]) -> int:
    mask = 0
    for i in S:
        mask |= 1 << (int(i) - 1)
    return mask


def from_mask(mask: int) -> Subset:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def guard_enumeration(n: int, limit: int = MAX_ENUMERATION) -> None:
    if n > limit:
        raise GroundSetTooLarge(f"n={n} exceeds the enumeration limit {limit}")


def subset_sums(values) -> np.ndarray:
    """Return ``t`` with ``t[mask] = sum(values[i] for bits i of mask)``.

    Built by doubling, so the table costs ``O(2^n)`` rather than ``O(n 2^n)``.
    """
    values = np.asarray(values, dtype=float)
    table = np.zeros(1)
    for x in values:
        table = np.concatenate([table, table + x])
    return table


def popcounts(n: int) -> np.ndarray:
    table = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        table = np.concatenate([table, table + 1])
    return table
