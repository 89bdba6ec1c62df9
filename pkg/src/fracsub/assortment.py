"""Assortment optimisation under a finite mixture of logit segments.

Segment ``k`` buys product ``i`` from assortment ``S`` with probability
``v[k, i] / (v0[k] + sum(v[k, S]))``.  The expected revenue
``sum_k p[k] * sum_{i in S} r[i] * q(i, S; v_k)`` is a sum of ratios with
``a = p_k r v_k``, ``b = v_k`` and ``b0 = v0_k``.

Segments are indexed from 0 (array rows); products are items ``1..n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import InvalidInstance, ItemNotOffered, UnsupportedRegion
from .ratio import MultiRatioInstance, Ratio
from .regions import Cardinality, FeasibleRegion, Knapsack, Unconstrained
from .reports import DEFAULT_TOL, SolveResult
from .solvers import guarantee_for
from .subsets import MAX_ENUMERATION, Subset, as_subset, from_mask, subset_sums


@dataclass(frozen=True, eq=False)
class MMNLInstance:
    p: np.ndarray       # (m,) segment probabilities
    v0: np.ndarray      # (m,) no-purchase weights
    v: np.ndarray       # (m, n) preference weights
    r: np.ndarray       # (n,) revenues
    region: FeasibleRegion = field(default_factory=Unconstrained)

    def __post_init__(self):
        p = np.array(self.p, dtype=float).reshape(-1)
        v0 = np.array(self.v0, dtype=float).reshape(-1)
        v = np.array(self.v, dtype=float, ndmin=2)
        r = np.array(self.r, dtype=float).reshape(-1)
        m, n = v.shape
        if len(p) != m or len(v0) != m:
            raise InvalidInstance(f"need one probability and no-purchase weight per segment ({m})")
        if len(r) != n or n == 0:
            raise InvalidInstance(f"need one revenue per product ({n})")
        for name, x in (("p", p), ("v0", v0), ("v", v), ("r", r)):
            if not np.all(np.isfinite(x)):
                raise InvalidInstance(f"{name} has non-finite entries")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
            raise InvalidInstance("segment probabilities must be nonnegative and sum to 1")
        if np.any(v0 <= 0) or np.any(v <= 0):
            raise InvalidInstance("preference and no-purchase weights must be strictly positive")
        if np.any(r < 0):
            raise InvalidInstance("revenues must be nonnegative")
        self.region.validate(n)
        for name, x in (("p", p), ("v0", v0), ("v", v), ("r", r)):
            x.setflags(write=False)
            object.__setattr__(self, name, x)

    @property
    def n(self) -> int:
        return self.v.shape[1]

    @property
    def m(self) -> int:
        return self.v.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, MMNLInstance)
            and all(np.array_equal(getattr(self, f), getattr(other, f)) for f in ("p", "v0", "v", "r"))
            and self.region == other.region
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p.tolist(),
            "v0": self.v0.tolist(),
            "v": self.v.tolist(),
            "r": self.r.tolist(),
            "region": self.region.to_dict(),
        }


def _items(inst: MMNLInstance, S: Iterable[int]) -> np.ndarray:
    return np.asarray(as_subset(S, inst.n), dtype=int) - 1


def choice_probability(inst: MMNLInstance, k: int, i: int, S: Iterable[int]) -> float:
    idx = _items(inst, S)
    if i - 1 not in idx:
        raise ItemNotOffered(f"product {i} is not in the assortment")
    return float(inst.v[k, i - 1] / (inst.v0[k] + inst.v[k, idx].sum()))


def no_purchase_probability(inst: MMNLInstance, k: int, S: Iterable[int]) -> float:
    idx = _items(inst, S)
    return float(inst.v0[k] / (inst.v0[k] + inst.v[k, idx].sum()))


def purchase_probability(inst: MMNLInstance, k: int, S: Iterable[int]) -> float:
    idx = _items(inst, S)
    total = inst.v[k, idx].sum()
    return float(total / (inst.v0[k] + total))


def alpha(inst: MMNLInstance, S: Iterable[int]) -> float:
    """Largest purchase probability over segments."""
    S = as_subset(S, inst.n)
    return max(purchase_probability(inst, k, S) for k in range(inst.m))


def expected_revenue(inst: MMNLInstance, S: Iterable[int]) -> float:
    idx = _items(inst, S)
    return float(sum(
        inst.p[k] * (inst.r[idx] * inst.v[k, idx]).sum() / (inst.v0[k] + inst.v[k, idx].sum())
        for k in range(inst.m)
    ))


def to_multiratio(inst: MMNLInstance) -> MultiRatioInstance:
    ratios = tuple(
        Ratio(inst.p[k] * inst.r * inst.v[k], inst.v0[k], inst.v[k]) for k in range(inst.m)
    )
    return MultiRatioInstance(ratios, inst.region)


def _max_weight_set(weights: np.ndarray, region: FeasibleRegion) -> Subset:
    """Feasible set maximising the summed (positive) weights."""
    n = len(weights)
    if isinstance(region, Unconstrained):
        return tuple(range(1, n + 1))
    if isinstance(region, Cardinality):
        order = np.lexsort((np.arange(n), -weights))[: region.p]
        return tuple(sorted(int(i) + 1 for i in order))
    if isinstance(region, Knapsack):
        if n > MAX_ENUMERATION:
            raise UnsupportedRegion(f"knapsack regions are enumerated and need n <= {MAX_ENUMERATION}")
        table = np.where(region.feasible_table(n), subset_sums(weights), -np.inf)
        return from_mask(int(np.argmax(table)))
    raise UnsupportedRegion(f"unsupported region {region!r}")


class ConditionCheck(NamedTuple):
    holds: bool
    margin: float
    lhs: float
    rhs: float


def _spread(r: np.ndarray) -> tuple[float, float]:
    return float(r.max()), float(r.min())


def check_revenue_spread(inst: MMNLInstance, k: int, tol: float = DEFAULT_TOL) -> ConditionCheck:
    """Compare the relative revenue spread with the smallest no-purchase odds of segment ``k``.

    ``(r_max - r_min) / r_min <= min_{S in F} (1 - q(S)) / q(S)``; the odds are
    smallest on the feasible set of largest total weight.  When it holds the
    segment's revenue function is nondecreasing and submodular.
    """
    r_max, r_min = _spread(inst.r)
    if r_max == r_min:
        lhs = 0.0
    elif r_min == 0:
        lhs = math.inf
    else:
        lhs = (r_max - r_min) / r_min
    S = _max_weight_set(inst.v[k], inst.region)
    q = purchase_probability(inst, k, S)
    rhs = math.inf if q == 0 else (1.0 - q) / q
    margin = rhs - lhs
    return ConditionCheck(bool(margin >= -tol), margin, lhs, rhs)


def check_cardinality_ratio_condition(inst: MMNLInstance, p: int | None = None, tol: float = DEFAULT_TOL) -> ConditionCheck:
    """Test ``r_max / r_min <= 1 / alpha_max`` under a cardinality bound.

    ``alpha_max`` is the largest purchase probability any segment reaches
    with at most ``p`` products.  When it holds greedy is (1 - 1/e)-optimal.
    """
    if p is None:
        if not isinstance(inst.region, Cardinality):
            raise UnsupportedRegion("the ratio condition is stated for cardinality regions")
        p = inst.region.p
    region = Cardinality(p)
    alpha_max = max(
        purchase_probability(inst, k, _max_weight_set(inst.v[k], region)) for k in range(inst.m)
    )
    r_max, r_min = _spread(inst.r)
    if r_max == r_min:
        lhs = 1.0
    else:
        lhs = math.inf if r_min == 0 else r_max / r_min
    rhs = 1.0 / alpha_max
    margin = rhs - lhs
    return ConditionCheck(bool(margin >= -tol), margin, lhs, rhs)


def revenue_ordered_sets(inst: MMNLInstance) -> list[Subset]:
    """Nested candidates ``{i : r_i >= t}`` for each distinct revenue ``t``, made feasible."""
    order = [int(i) + 1 for i in np.lexsort((np.arange(inst.n), -inst.r))]
    out = []
    for t in sorted(set(inst.r.tolist()), reverse=True):
        S = [i for i in order if inst.r[i - 1] >= t]
        if isinstance(inst.region, Cardinality):
            S = S[: inst.region.p]
        S = tuple(sorted(S))
        if inst.region.contains(S) and S not in out:
            out.append(S)
    return out


def revenue_ordered_baseline(inst: MMNLInstance) -> SolveResult:
    """Best revenue-ordered assortment.

    The ``1 / (1 + ln(r_max / r_min))`` factor is attached only for
    unconstrained instances with ``r_min > 0``.
    """
    best, best_value = (), 0.0
    for S in revenue_ordered_sets(inst):
        value = expected_revenue(inst, S)
        if value > best_value:
            best, best_value = S, value
    mr = to_multiratio(inst)
    bound = guarantee_for(mr, None, revenue_range=_spread(inst.r))
    return SolveResult(set=best, value=best_value, bound=bound, method="revenue_ordered")


def is_value_conscious(inst: MMNLInstance, tol: float = 0.0) -> bool:
    """Weights nondecreasing and ``r_i v_i`` nonincreasing in item order, for every segment."""
    rv = inst.v * inst.r
    return bool(np.all(np.diff(inst.v, axis=1) >= -tol) and np.all(np.diff(rv, axis=1) <= tol))
