"""Submodularity and monotonicity certificates for ratios and sums of ratios.

Exhaustive scans work on value tables indexed by bitmask (bit ``i - 1`` is
item ``i``) and are limited to ``n <= 20``.  Every scan reports the smallest
signed slack it saw; a slack below ``-tol`` is a violation.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Union

import numpy as np

from .errors import GroundSetTooLarge, HomogeneousRatio, NotCertifiedSubmodular, UnsupportedRegion
from .ratio import MultiRatioInstance, Ratio, evaluate_ratio
from .regions import FeasibleRegion, Unconstrained
from .reports import DEFAULT_TOL, CertificationReport, InstanceCertification, Verdict, Witness
from .solvers import single_ratio_max
from .subsets import from_mask

MAX_EXHAUSTIVE = 20

SetFunction = Union[Callable, np.ndarray, Ratio, MultiRatioInstance]


def _guard(n: int) -> None:
    if n > MAX_EXHAUSTIVE:
        raise GroundSetTooLarge(f"exhaustive scan limited to n <= {MAX_EXHAUSTIVE}, got n={n}")


def set_function_table(f: SetFunction, n: int) -> np.ndarray:
    """Values of ``f`` on all ``2^n`` bitmasks.

    ``f`` may already be a table, an object with ``value_table()``, or a
    callable taking a sorted tuple of items.
    """
    _guard(n)
    if isinstance(f, np.ndarray):
        if f.shape != (1 << n,):
            raise ValueError(f"value table must have length 2^{n}")
        return f.astype(float)
    if hasattr(f, "value_table"):
        return np.asarray(f.value_table(), dtype=float)
    return np.array([f(from_mask(mask)) for mask in range(1 << n)], dtype=float)


@lru_cache(maxsize=32)
def _masks(n: int) -> np.ndarray:
    out = np.arange(1 << n, dtype=np.int64)
    out.setflags(write=False)
    return out


def _pair_bases(n: int, feasible: np.ndarray):
    """For each pair ``i < j`` yield the masks ``S`` avoiding both with ``S+i+j`` feasible."""
    masks = _masks(n)
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            base = masks[(masks & (bi | bj)) == 0]
            base = base[feasible[base | bi | bj]]
            if len(base):
                yield i, j, bi, bj, base


class _MinTracker:
    def __init__(self):
        self.slack = math.inf
        self.witness: Optional[Witness] = None

    def update(self, slacks: np.ndarray, base: np.ndarray, i: int, j: Optional[int]):
        k = int(np.argmin(slacks))
        if slacks[k] < self.slack:
            self.slack = float(slacks[k])
            self.witness = Witness(from_mask(int(base[k])), i + 1, None if j is None else j + 1)


def check_submodular_definition(
    f: SetFunction, F: FeasibleRegion, n: int, tol: float = DEFAULT_TOL
) -> CertificationReport:
    """Test ``f(S+i+j) - f(S+j) <= f(S+i) - f(S)`` for every admissible triple."""
    table = set_function_table(f, n)
    feasible = F.feasible_table(n)
    track = _MinTracker()
    for i, j, bi, bj, base in _pair_bases(n, feasible):
        slack = table[base | bi] - table[base] - table[base | bi | bj] + table[base | bj]
        track.update(slack, base, i, j)
    ok = track.slack >= -tol
    return CertificationReport(
        verdict=Verdict.SUBMODULAR if ok else Verdict.NOT_SUBMODULAR,
        method="definition",
        min_slack=track.slack,
        witness=None if ok else track.witness,
        tol=tol,
    )


class MonotoneScan(NamedTuple):
    holds: bool
    min_slack: float
    witness: Optional[Witness]


def check_monotone_definition(f: SetFunction, F: FeasibleRegion, n: int, tol: float = DEFAULT_TOL) -> MonotoneScan:
    """Exhaustive test of ``f(S) <= f(S+j)`` whenever ``S+j`` is feasible."""
    table = set_function_table(f, n)
    feasible = F.feasible_table(n)
    masks = _masks(n)
    track = _MinTracker()
    for j in range(n):
        bj = 1 << j
        base = masks[(masks & bj) == 0]
        base = base[feasible[base | bj]]
        if len(base):
            track.update(table[base | bj] - table[base], base, j, None)
    return MonotoneScan(track.slack >= -tol, track.slack, None if track.slack >= -tol else track.witness)


def pairwise_slack(r: Ratio, S, i: int, j: int) -> float:
    """Slack of ``h(S+i) + h(S+j) <= a_i/b_i + a_j/b_j`` at one triple."""
    S = tuple(S)
    rho = r.item_ratios
    return float(rho[i - 1] + rho[j - 1] - evaluate_ratio(r, S + (i,)) - evaluate_ratio(r, S + (j,)))


def definition_slack(f: Callable, S, i: int, j: int) -> float:
    """Slack of the diminishing-returns inequality at one triple."""
    S = tuple(S)
    return float(f(S + (i,)) - f(S) - f(S + (i, j)) + f(S + (j,)))


def check_ratio_submodular(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL) -> CertificationReport:
    """Exact submodularity test for a ratio with ``b0 > 0``.

    Uses the pairwise condition ``h(S+i) + h(S+j) <= a_i/b_i + a_j/b_j``,
    which is equivalent to submodularity when ``b0 > 0``.
    """
    if r.homogeneous:
        raise HomogeneousRatio("pairwise test needs b0 > 0; use check_homogeneous_obstruction")
    n = r.n
    _guard(n)
    table = r.value_table()
    rho = r.item_ratios
    feasible = F.feasible_table(n)
    track = _MinTracker()
    for i, j, bi, bj, base in _pair_bases(n, feasible):
        slack = rho[i] + rho[j] - table[base | bi] - table[base | bj]
        track.update(slack, base, i, j)
    ok = track.slack >= -tol
    return CertificationReport(
        verdict=Verdict.SUBMODULAR if ok else Verdict.NOT_SUBMODULAR,
        method="pairwise-ratio",
        min_slack=track.slack,
        witness=None if ok else track.witness,
        tol=tol,
    )


def check_monotone_unconstrained(r: Ratio, tol: float = DEFAULT_TOL) -> bool:
    """Exact monotonicity test over all subsets: ``min a_i/b_i >= h(N)``."""
    return bool(r.item_ratios.min() >= evaluate_ratio(r, range(1, r.n + 1)) - tol)


def check_monotone_sufficient(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL) -> CertificationReport:
    """Compare ``min a_i/b_i`` with ``max_{S in F} h(S)``.

    Passing certifies monotone (hence submodular).  Failing is conclusive
    only on unconstrained regions, where the test is exact.
    """
    lhs = float(r.item_ratios.min())
    best = single_ratio_max(r, F, tol)
    slack = lhs - best.value
    ok = slack >= -tol
    exact = isinstance(F, Unconstrained)
    return CertificationReport(
        verdict=Verdict.MONOTONE_SUBMODULAR if ok else Verdict.INCONCLUSIVE,
        method="min-ratio-vs-max" + ("-unconstrained" if exact else ""),
        min_slack=slack,
        monotone=True if ok else (False if exact else None),
        tol=tol,
        details={"min_item_ratio": lhs, "max_value": best.value, "argmax": list(best.set)},
    )


def _distinct(x: float, y: float, tol: float) -> bool:
    return abs(x - y) > tol * max(abs(x), abs(y), 1.0)


def check_homogeneous_obstruction(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL) -> CertificationReport:
    """Refute submodularity of a homogeneous ratio from a feasible triple.

    For items with ``a_1/b_1 < a_2/b_2 < a_3/b_3`` in a common feasible set,
    ``h({1,3}) + h({2,3}) < h({1,2,3}) + h({3})``.  The triple with the most
    negative slack is reported as witness ``S={3}, i=1, j=2``.
    """
    if not r.homogeneous:
        raise ValueError("obstruction applies only to ratios with b0 == 0")
    rho = r.item_ratios
    best_slack, best = math.inf, None
    for triple in itertools.combinations(range(1, r.n + 1), 3):
        x, y, z = sorted(triple, key=lambda i: (rho[i - 1], i))
        if not (_distinct(rho[x - 1], rho[y - 1], tol) and _distinct(rho[y - 1], rho[z - 1], tol)):
            continue
        if not F.contains(triple):
            continue
        slack = definition_slack(r, (z,), x, y)
        if slack < best_slack:
            best_slack, best = slack, (x, y, z)
    if best is None or best_slack >= -tol:
        return CertificationReport(
            verdict=Verdict.INCONCLUSIVE,
            method="homogeneous-obstruction",
            min_slack=best_slack,
            tol=tol,
            details={"reason": "no feasible set holds three distinct item ratios"
                     if best is None else "violation within tolerance"},
        )
    x, y, z = best
    sets = [tuple(sorted((x, z))), tuple(sorted((y, z))), tuple(sorted((x, y, z))), (z,)]
    return CertificationReport(
        verdict=Verdict.NOT_SUBMODULAR,
        method="homogeneous-obstruction",
        min_slack=best_slack,
        witness=Witness((z,), x, y),
        monotone=False,
        tol=tol,
        details={"sets": [list(s) for s in sets]},
    )


def check_near_monotone_structure(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL) -> bool:
    """Check the near-monotone structure of a submodular ratio.

    With ``n*`` the item of smallest ``a_i/b_i`` (largest index on ties):
    ``h`` must be nondecreasing on feasible sets containing ``n*``, and on
    sets without ``n*`` adding any ``j`` must not decrease ``h`` whenever
    both ``S+j`` and ``S+n*`` are feasible.
    """
    n = r.n
    _guard(n)
    pre = check_submodular_definition(r, F, n, tol) if r.homogeneous else check_ratio_submodular(r, F, tol)
    if not pre.verdict.certified:
        raise NotCertifiedSubmodular("near-monotone structure requires a submodular ratio")
    rho = r.item_ratios
    star = int(np.flatnonzero(rho == rho.min())[-1])
    bstar = 1 << star
    table = r.value_table()
    feasible = F.feasible_table(n)
    masks = _masks(n)
    for j in range(n):
        if j == star:
            continue
        bj = 1 << j
        free = masks[(masks & bj) == 0]
        ext_ok = feasible[free] & feasible[free | bj]
        with_star = free[ext_ok & ((free & bstar) != 0)]
        if np.any(table[with_star | bj] - table[with_star] < -tol):
            return False
        no_star = free[ext_ok & ((free & bstar) == 0)]
        no_star = no_star[feasible[no_star | bstar]]
        if np.any(table[no_star | bj] - table[no_star] < -tol):
            return False
    return True


def certify_ratio(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL, exact_limit: int = MAX_EXHAUSTIVE) -> CertificationReport:
    """Run the certification ladder on one ratio.

    Order: the polynomial min-ratio test, then the homogeneous obstruction
    when ``b0 == 0``, then an exhaustive scan when ``n <= exact_limit``.
    """
    mono = None
    try:
        mono = check_monotone_sufficient(r, F, tol)
    except UnsupportedRegion:
        pass
    if mono is not None and mono.verdict is Verdict.MONOTONE_SUBMODULAR:
        return mono
    monotone = mono.monotone if mono is not None else None
    exhaustive = r.n <= min(exact_limit, MAX_EXHAUSTIVE)

    if r.homogeneous:
        obs = check_homogeneous_obstruction(r, F, tol)
        if obs.verdict is Verdict.NOT_SUBMODULAR or not exhaustive:
            return obs
        rep = check_submodular_definition(r, F, r.n, tol)
    elif exhaustive:
        rep = check_ratio_submodular(r, F, tol)
    else:
        return CertificationReport(
            verdict=Verdict.INCONCLUSIVE,
            method="min-ratio-vs-max",
            min_slack=mono.min_slack if mono is not None else math.inf,
            monotone=monotone,
            tol=tol,
            details={"reason": f"n={r.n} beyond exhaustive limit {exact_limit}"},
        )
    if rep.verdict is Verdict.NOT_SUBMODULAR:
        monotone = False
    return CertificationReport(
        verdict=rep.verdict,
        method=rep.method,
        min_slack=rep.min_slack,
        witness=rep.witness,
        monotone=monotone,
        tol=tol,
        details=dict(mono.details) if mono is not None else {},
    )


def certify_instance(
    inst: MultiRatioInstance, tol: float = DEFAULT_TOL, exact_limit: int = MAX_EXHAUSTIVE
) -> InstanceCertification:
    """Certify every ratio, then aggregate.

    Sums of submodular (monotone) functions stay submodular (monotone).  A
    non-submodular term says nothing about the sum, so that case falls back
    to a definition scan of the summed objective when ``n`` allows it.
    """
    reports = tuple(certify_ratio(r, inst.region, tol, exact_limit) for r in inst.ratios)
    if len(reports) == 1:
        rep = reports[0]
        return InstanceCertification(reports, rep.verdict, rep.monotone, "per-ratio")
    if all(rep.verdict is Verdict.MONOTONE_SUBMODULAR for rep in reports):
        return InstanceCertification(reports, Verdict.MONOTONE_SUBMODULAR, True, "per-ratio")
    if all(rep.verdict.certified for rep in reports):
        return InstanceCertification(reports, Verdict.SUBMODULAR, None, "per-ratio")
    if inst.n <= min(exact_limit, MAX_EXHAUSTIVE):
        total = check_submodular_definition(inst, inst.region, inst.n, tol)
        return InstanceCertification(reports, total.verdict, None, "definition-on-sum", total)
    return InstanceCertification(reports, Verdict.INCONCLUSIVE, None, "per-ratio")
