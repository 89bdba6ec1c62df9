"""p-choice facility location.

Open exactly ``p`` of ``n`` locations to maximise the weighted market share
``sum_k d_k * sum_{i in S} v[k,i] w_i / sum_{i in S} v[k,i]``.  Each term is
homogeneous, so the solver first rewrites it with the constant
``vmin_k = delta * min_i v[k,i]``: on sets of size ``p``

    sum_{i in S} v[k,i] = p * vmin_k + sum_{i in S} (v[k,i] - vmin_k),

which gives ratios with ``b0 = p * vmin_k > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .assortment import ConditionCheck
from .certification import certify_instance
from .errors import EmptySet, InvalidInstance
from .ratio import MultiRatioInstance, Ratio
from .regions import Cardinality
from .reports import DEFAULT_TOL, Bound, GreedyTrace, InstanceCertification, SolveResult
from .solvers import GREEDY_CARDINALITY, greedy_maximize, single_ratio_max
from .subsets import MAX_ENUMERATION, as_subset, from_mask, guard_enumeration, popcounts


@dataclass(frozen=True, eq=False)
class PChoiceInstance:
    d: np.ndarray       # (m,) demands
    v: np.ndarray       # (m, n) utilities
    w: np.ndarray       # (n,) location weights
    p: int
    delta: float = 0.5

    def __post_init__(self):
        d = np.array(self.d, dtype=float).reshape(-1)
        v = np.array(self.v, dtype=float, ndmin=2)
        w = np.array(self.w, dtype=float).reshape(-1)
        m, n = v.shape
        if len(d) != m or len(w) != n or n == 0:
            raise InvalidInstance(f"shape mismatch: d has {len(d)}, v is {v.shape}, w has {len(w)}")
        for name, x in (("d", d), ("v", v), ("w", w)):
            if not np.all(np.isfinite(x)) or np.any(x <= 0):
                raise InvalidInstance(f"{name} must be strictly positive")
        if int(self.p) != self.p or not 1 <= self.p <= n:
            raise InvalidInstance(f"p must be an integer in 1..{n}, got {self.p}")
        if not 0 < self.delta < 1:
            raise InvalidInstance(f"delta must lie in (0, 1), got {self.delta}")
        for name, x in (("d", d), ("v", v), ("w", w)):
            x.setflags(write=False)
            object.__setattr__(self, name, x)
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def n(self) -> int:
        return self.v.shape[1]

    @property
    def m(self) -> int:
        return self.v.shape[0]

    @property
    def vmin(self) -> np.ndarray:
        return self.delta * self.v.min(axis=1)

    def with_delta(self, delta: float) -> "PChoiceInstance":
        return PChoiceInstance(self.d, self.v, self.w, self.p, delta)

    def __eq__(self, other):
        return (
            isinstance(other, PChoiceInstance)
            and all(np.array_equal(getattr(self, f), getattr(other, f)) for f in ("d", "v", "w"))
            and (self.p, self.delta) == (other.p, other.delta)
        )

    def to_dict(self) -> dict:
        return {"d": self.d.tolist(), "v": self.v.tolist(), "w": self.w.tolist(), "p": self.p, "delta": self.delta}


def market_share_objective(inst: PChoiceInstance, S: Iterable[int]) -> float:
    S = as_subset(S, inst.n)
    if not S:
        raise EmptySet("market share is undefined for an empty set of locations")
    idx = np.asarray(S) - 1
    v = inst.v[:, idx]
    return float((inst.d * (v * inst.w[idx]).sum(axis=1) / v.sum(axis=1)).sum())


def homogeneous_ratios(inst: PChoiceInstance) -> MultiRatioInstance:
    """The raw objective as ratios with ``b0 = 0`` (no size constraint attached)."""
    return MultiRatioInstance(
        tuple(Ratio(inst.d[k] * inst.v[k] * inst.w, 0.0, inst.v[k]) for k in range(inst.m)),
        Cardinality(inst.p),
    )


def homogenize(inst: PChoiceInstance) -> MultiRatioInstance:
    vmin = inst.vmin
    ratios = tuple(
        Ratio(inst.d[k] * inst.v[k] * inst.w, inst.p * vmin[k], inst.v[k] - vmin[k])
        for k in range(inst.m)
    )
    return MultiRatioInstance(ratios, Cardinality(inst.p))


def check_pchoice_monotone(inst: PChoiceInstance, k: int, tol: float = DEFAULT_TOL) -> ConditionCheck:
    """Does the homogenised ratio ``k`` stay nondecreasing on ``|S| <= p``?

    Compares ``min_i v_i w_i / (v_i - vmin)`` with the ratio's maximum over
    ``|S| <= p``, found by Dinkelbach iteration.
    """
    r = homogenize(inst).ratios[k]
    lhs = float(r.item_ratios.min()) / inst.d[k]
    rhs = single_ratio_max(r, Cardinality(inst.p), tol).value / inst.d[k]
    margin = lhs - rhs
    return ConditionCheck(bool(margin >= -tol), margin, lhs, rhs)


def check_pchoice_sufficient(inst: PChoiceInstance, k: int, tol: float = DEFAULT_TOL) -> bool:
    """Closed-form test ``w_min / w_max + 1 >= v_max / vmin`` for segment ``k``."""
    lhs = inst.w.min() / inst.w.max() + 1.0
    rhs = inst.v[k].max() / inst.vmin[k]
    return bool(lhs >= rhs - tol)


def pchoice_sufficient_sides(inst: PChoiceInstance, k: int) -> tuple[float, float]:
    return float(inst.w.min() / inst.w.max() + 1.0), float(inst.v[k].max() / inst.vmin[k])


def brute_force_pchoice(inst: PChoiceInstance) -> SolveResult:
    """Exact optimum over sets of exactly ``p`` locations."""
    guard_enumeration(inst.n)
    hom = homogenize(inst)
    table = np.where(popcounts(inst.n) == inst.p, hom.value_table(), -np.inf)
    S = from_mask(int(np.argmax(table)))
    return SolveResult(set=S, value=market_share_objective(inst, S), method="brute_force")


@dataclass(frozen=True)
class PChoiceReport:
    result: SolveResult
    trace: GreedyTrace
    certification: InstanceCertification
    monotone_checks: tuple
    sufficient_checks: tuple
    relaxation_justified: bool
    reached_p: bool
    optimum: Optional[SolveResult] = None

    @property
    def empirical_ratio(self) -> Optional[float]:
        if self.optimum is None or self.optimum.value == 0:
            return None
        return self.result.value / self.optimum.value

    def to_dict(self) -> dict:
        return {
            "result": self.result.to_dict(),
            "trace": self.trace.to_dict(),
            "certification": self.certification.to_dict(),
            "monotone_checks": [c._asdict() for c in self.monotone_checks],
            "sufficient_checks": list(self.sufficient_checks),
            "relaxation_justified": self.relaxation_justified,
            "reached_p": self.reached_p,
            "optimum": self.optimum.to_dict() if self.optimum else None,
            "empirical_ratio": self.empirical_ratio,
        }


def solve_pchoice(inst: PChoiceInstance, tol: float = DEFAULT_TOL, brute_limit: int = MAX_ENUMERATION) -> PChoiceReport:
    """Homogenise, certify, run greedy to exactly ``p`` locations, and compare with brute force.

    The greedy answer is the final set (never a shorter prefix) because the
    original model fixes ``|S| = p``.  The (1 - 1/e) factor is claimed only
    when every segment passes the monotonicity check, which justifies
    relaxing to ``|S| <= p``.
    """
    hom = homogenize(inst)
    cert = certify_instance(hom, tol)
    mono = tuple(check_pchoice_monotone(inst, k, tol) for k in range(inst.m))
    suff = tuple(check_pchoice_sufficient(inst, k, tol) for k in range(inst.m))
    justified = all(c.holds for c in mono)
    trace = greedy_maximize(hom)
    S = trace.final_set
    bound = Bound(GREEDY_CARDINALITY, "greedy on monotone submodular, cardinality constraint") if justified else None
    result = SolveResult(set=S, value=market_share_objective(inst, S), bound=bound, method="greedy")
    optimum = brute_force_pchoice(inst) if inst.n <= brute_limit else None
    return PChoiceReport(
        result=result,
        trace=trace,
        certification=cert,
        monotone_checks=mono,
        sufficient_checks=suff,
        relaxation_justified=justified,
        reached_p=len(S) == inst.p,
        optimum=optimum,
    )
