"""Downward-closed feasible families: no constraint, a cardinality bound, or one knapsack row."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidInstance
from .subsets import Subset, from_mask, guard_enumeration, popcounts, subset_sums

# Slack allowed on a knapsack row so that different summation orders agree at the boundary.
KNAPSACK_RTOL = 1e-12


class FeasibleRegion:
    """Common interface; concrete kinds are the three dataclasses below."""

    kind: str

    def contains(self, S: Iterable[int]) -> bool:
        raise NotImplementedError

    def extendable(self, S: Iterable[int], j: int) -> bool:
        return self.contains(tuple(S) + (j,))

    def feasible_table(self, n: int) -> np.ndarray:
        """Boolean membership table over all ``2^n`` bitmasks."""
        raise NotImplementedError

    def validate(self, n: int) -> None:
        pass

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Unconstrained(FeasibleRegion):
    kind: str = field(default="unconstrained", init=False)

    def contains(self, S):
        return True

    def extendable(self, S, j):
        return True

    def feasible_table(self, n):
        return np.ones(1 << n, dtype=bool)

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class Cardinality(FeasibleRegion):
    p: int
    kind: str = field(default="cardinality", init=False)

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise InvalidInstance(f"cardinality bound must be a positive integer, got {self.p}")
        object.__setattr__(self, "p", int(self.p))

    def validate(self, n):
        if self.p > n:
            raise InvalidInstance(f"cardinality bound p={self.p} exceeds n={n}")

    def contains(self, S):
        return len(tuple(S)) <= self.p

    def extendable(self, S, j):
        return len(tuple(S)) < self.p

    def feasible_table(self, n):
        return popcounts(n) <= self.p

    def to_dict(self):
        return {"kind": self.kind, "p": self.p}


@dataclass(frozen=True, eq=False)
class Knapsack(FeasibleRegion):
    w: np.ndarray
    c: float
    kind: str = field(default="knapsack", init=False)

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 1 or np.any(~np.isfinite(w)) or np.any(w < 0):
            raise InvalidInstance("knapsack weights must be a vector of nonnegative reals")
        if not np.isfinite(self.c) or self.c < 0:
            raise InvalidInstance(f"knapsack capacity must be nonnegative, got {self.c}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "c", float(self.c))

    def __eq__(self, other):
        return (
            isinstance(other, Knapsack)
            and self.c == other.c
            and np.array_equal(self.w, other.w)
        )

    def __hash__(self):
        return hash((self.c, self.w.tobytes()))

    @property
    def _limit(self) -> float:
        return self.c + KNAPSACK_RTOL * max(1.0, self.c)

    def validate(self, n):
        if len(self.w) != n:
            raise InvalidInstance(f"knapsack has {len(self.w)} weights for n={n} items")

    def load(self, S: Iterable[int]) -> float:
        return float(sum(self.w[i - 1] for i in S))

    def contains(self, S):
        return self.load(S) <= self._limit

    def extendable(self, S, j):
        return self.load(S) + self.w[j - 1] <= self._limit

    def feasible_table(self, n):
        return subset_sums(self.w[:n]) <= self._limit

    def to_dict(self):
        return {"kind": self.kind, "w": [float(x) for x in self.w], "c": self.c}


def region_from_dict(d: dict) -> FeasibleRegion:
    kind = d.get("kind")
    if kind == "unconstrained":
        return Unconstrained()
    if kind == "cardinality":
        return Cardinality(d["p"])
    if kind == "knapsack":
        return Knapsack(d["w"], d["c"])
    raise InvalidInstance(f"unknown region kind {kind!r}")


def contains(F: FeasibleRegion, S: Iterable[int]) -> bool:
    return F.contains(S)


def extendable(F: FeasibleRegion, S: Iterable[int], j: int) -> bool:
    return F.extendable(S, j)


def enumerate_feasible(F: FeasibleRegion, n: int) -> Iterator[Subset]:
    """Yield every feasible subset once, ordered by bitmask value."""
    guard_enumeration(n)
    table = F.feasible_table(n)
    for mask in np.flatnonzero(table):
        yield from_mask(int(mask))

