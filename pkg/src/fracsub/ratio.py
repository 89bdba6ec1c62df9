"""Single ratios, multi-ratio objectives and incremental evaluation.

A ratio is the set function

    h(S) = sum(a[i] for i in S) / (b0 + sum(b[i] for i in S))

with ``a >= 0``, ``b0 >= 0`` and ``b > 0``.  ``h(empty set)`` is 0 even for a
homogeneous ratio (``b0 == 0``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InfeasibleSet, InvalidInstance, ItemAlreadyPresent
from .regions import FeasibleRegion, Unconstrained
from .subsets import Subset, as_subset, guard_enumeration, subset_sums


def _frozen_vector(x, name: str) -> np.ndarray:
    arr = np.array(x, dtype=float)
    if arr.ndim != 1:
        raise InvalidInstance(f"{name} must be a vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidInstance(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Ratio:
    """One hyperbolic term over items ``1..n``."""

    a: np.ndarray
    b0: float
    b: np.ndarray

    def __post_init__(self):
        a = _frozen_vector(self.a, "a")
        b = _frozen_vector(self.b, "b")
        b0 = float(self.b0)
        if len(a) == 0 or len(a) != len(b):
            raise InvalidInstance(
                f"numerator has {len(a)} coefficients, denominator has {len(b)}; need equal n >= 1"
            )
        bad = np.flatnonzero(a < 0)
        if len(bad):
            raise InvalidInstance(
                f"a[{bad[0] + 1}] = {a[bad[0]]!r}: numerator coefficients must be nonnegative "
                "(positivity assumption: a >= 0, b0 >= 0, b > 0)"
            )
        if not np.isfinite(b0) or b0 < 0:
            raise InvalidInstance(
                f"b0 = {b0!r}: denominator constant must be nonnegative "
                "(positivity assumption: a >= 0, b0 >= 0, b > 0)"
            )
        bad = np.flatnonzero(b <= 0)
        if len(bad):
            raise InvalidInstance(
                f"b[{bad[0] + 1}] = {b[bad[0]]!r}: denominator coefficients must be strictly positive "
                "(positivity assumption: a >= 0, b0 >= 0, b > 0)"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "b0", b0)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def homogeneous(self) -> bool:
        return self.b0 == 0.0

    @property
    def item_ratios(self) -> np.ndarray:
        """``a[i] / b[i]`` for every item, in item order."""
        return self.a / self.b

    def __eq__(self, other):
        return (
            isinstance(other, Ratio)
            and self.b0 == other.b0
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __hash__(self):
        return hash((self.b0, self.a.tobytes(), self.b.tobytes()))

    def __call__(self, S: Iterable[int]) -> float:
        return evaluate_ratio(self, S)

    def scaled(self, numerator: float = 1.0, denominator: float = 1.0) -> "Ratio":
        return Ratio(self.a * numerator, self.b0 * denominator, self.b * denominator)

    def value_table(self) -> np.ndarray:
        """``h`` over all ``2^n`` bitmasks, vectorised."""
        guard_enumeration(self.n)
        A = subset_sums(self.a)
        B = self.b0 + subset_sums(self.b)
        out = np.zeros_like(A)
        np.divide(A, B, out=out, where=B > 0)
        return out

    def to_dict(self) -> dict:
        return {"a": [float(x) for x in self.a], "b0": self.b0, "b": [float(x) for x in self.b]}

    @classmethod
    def from_dict(cls, d: dict) -> "Ratio":
        return cls(d["a"], d["b0"], d["b"])


def evaluate_ratio(r: Ratio, S: Iterable[int]) -> float:
    S = as_subset(S, r.n)
    if not S:
        return 0.0
    idx = np.asarray(S) - 1
    return float(r.a[idx].sum() / (r.b0 + r.b[idx].sum()))


@dataclass
class RatioAccumulator:
    """Running ``(A_S, B_S)`` for one ratio; single-owner and mutable."""

    ratio: Ratio
    A: float = 0.0
    B: float = field(default=None)
    members: set = field(default_factory=set)

    def __post_init__(self):
        if self.B is None:
            self.B = self.ratio.b0
        if self.members:
            S = as_subset(self.members, self.ratio.n)
            idx = np.asarray(S) - 1
            self.A = float(self.ratio.a[idx].sum())
            self.B = float(self.ratio.b0 + self.ratio.b[idx].sum())
            self.members = set(S)

    @property
    def value(self) -> float:
        return self.A / self.B if self.members else 0.0

    def subset(self) -> Subset:
        return tuple(sorted(self.members))


def marginal_gain(r: Ratio, acc: RatioAccumulator, j: int) -> float:
    """``h(S + j) - h(S)`` in O(1) from the accumulator."""
    if j in acc.members:
        raise ItemAlreadyPresent(f"item {j} already in the set")
    aj, bj = r.a[j - 1], r.b[j - 1]
    return float((acc.A + aj) / (acc.B + bj) - acc.value)


def extend(acc: RatioAccumulator, j: int) -> RatioAccumulator:
    if j in acc.members:
        raise ItemAlreadyPresent(f"item {j} already in the set")
    if not 1 <= j <= acc.ratio.n:
        raise ValueError(f"item {j} outside ground set 1..{acc.ratio.n}")
    acc.A += float(acc.ratio.a[j - 1])
    acc.B += float(acc.ratio.b[j - 1])
    acc.members.add(j)
    return acc


@dataclass(frozen=True, eq=False)
class MultiRatioInstance:
    """Sum of ratios over a common ground set, maximised over ``region``."""

    ratios: tuple
    region: FeasibleRegion = field(default_factory=Unconstrained)

    def __post_init__(self):
        ratios = tuple(self.ratios)
        if not ratios:
            raise InvalidInstance("an instance needs at least one ratio")
        n = ratios[0].n
        for k, r in enumerate(ratios):
            if r.n != n:
                raise InvalidInstance(f"ratio {k} has n={r.n}, expected {n}")
        self.region.validate(n)
        object.__setattr__(self, "ratios", ratios)

    @property
    def n(self) -> int:
        return self.ratios[0].n

    @property
    def m(self) -> int:
        return len(self.ratios)

    @property
    def numerators(self) -> np.ndarray:
        return np.vstack([r.a for r in self.ratios])

    @property
    def denominators(self) -> np.ndarray:
        return np.vstack([r.b for r in self.ratios])

    @property
    def constants(self) -> np.ndarray:
        return np.array([r.b0 for r in self.ratios])

    def __eq__(self, other):
        return (
            isinstance(other, MultiRatioInstance)
            and self.ratios == other.ratios
            and self.region == other.region
        )

    def __call__(self, S: Iterable[int]) -> float:
        return sum(evaluate_ratio(r, S) for r in self.ratios)

    def with_region(self, region: FeasibleRegion) -> "MultiRatioInstance":
        return MultiRatioInstance(self.ratios, region)

    def value_table(self) -> np.ndarray:
        return np.sum([r.value_table() for r in self.ratios], axis=0)

    def to_dict(self) -> dict:
        return {"ratios": [r.to_dict() for r in self.ratios], "region": self.region.to_dict()}


def evaluate_objective(inst: MultiRatioInstance, S: Iterable[int]) -> float:
    S = as_subset(S, inst.n)
    if not inst.region.contains(S):
        raise InfeasibleSet(f"{list(S)} is not in the feasible region")
    return float(sum(evaluate_ratio(r, S) for r in inst.ratios))


def single_ratio_instance(
    a: Sequence[float], b0: float, b: Sequence[float], region: FeasibleRegion | None = None
) -> MultiRatioInstance:
    return MultiRatioInstance((Ratio(a, b0, b),), region or Unconstrained())
