"""Greedy, brute-force and Dinkelbach solvers."""
from __future__ import annotations

import heapq
import math
from typing import Optional

import numpy as np

from .errors import NotCertifiedSubmodular, UnsupportedRegion
from .ratio import MultiRatioInstance, Ratio, evaluate_objective, evaluate_ratio
from .regions import Cardinality, FeasibleRegion, Knapsack, Unconstrained
from .reports import DEFAULT_TOL, Bound, GreedyTrace, SolveResult, Verdict
from .subsets import MAX_ENUMERATION, from_mask, guard_enumeration

GREEDY_CARDINALITY = 1.0 - 1.0 / math.e


def _candidate_values(a, b, A, B):
    # objective of S + j for every j, summed over ratios; shapes (m, n), (m,)
    return ((A[:, None] + a) / (B[:, None] + b)).sum(axis=0)


def greedy_maximize(inst: MultiRatioInstance, *, lazy: bool = False, certification=None) -> GreedyTrace:
    """Run the greedy insertion algorithm until no feasible extension remains.

    Every step inserts the feasible item with the largest objective after
    insertion, even when that lowers the objective; ties go to the smaller
    item.  The trace also records the best prefix seen, which is the answer
    to use for non-monotone objectives.

    ``lazy=True`` switches to priority-queue evaluation and requires a
    ``certification`` whose verdict is submodular.
    """
    if lazy:
        verdict = getattr(certification, "verdict", None)
        if verdict is None or not Verdict(verdict).certified:
            raise NotCertifiedSubmodular("lazy greedy needs an instance certified submodular")
        return _lazy_greedy(inst)

    a, b = inst.numerators, inst.denominators
    A = np.zeros(inst.m)
    B = inst.constants.astype(float)
    S: list[int] = []
    taken = np.zeros(inst.n, dtype=bool)
    steps = []
    best_set, best_value = (), 0.0
    while True:
        cand = np.array(
            [not taken[j - 1] and inst.region.extendable(S, j) for j in range(1, inst.n + 1)]
        )
        if not cand.any():
            break
        vals = np.where(cand, _candidate_values(a, b, A, B), -np.inf)
        j = int(np.argmax(vals))
        A += a[:, j]
        B += b[:, j]
        taken[j] = True
        S.append(j + 1)
        value = float(vals[j])
        steps.append((j + 1, value))
        if value > best_value:
            best_set, best_value = tuple(sorted(S)), value
    final = tuple(sorted(S))
    return GreedyTrace(
        steps=tuple(steps),
        final_set=final,
        final_value=steps[-1][1] if steps else 0.0,
        best_prefix_set=best_set,
        best_value=best_value,
    )


def _lazy_greedy(inst: MultiRatioInstance) -> GreedyTrace:
    a, b = inst.numerators, inst.denominators
    A = np.zeros(inst.m)
    B = inst.constants.astype(float)
    current = 0.0
    gains = _candidate_values(a, b, A, B) - current
    heap = [(-float(g), j + 1) for j, g in enumerate(gains)]
    heapq.heapify(heap)
    S: list[int] = []
    steps = []
    best_set, best_value = (), 0.0
    while heap:
        _, j = heapq.heappop(heap)
        if not inst.region.extendable(S, j):
            # downward closure: once S + j is infeasible it stays infeasible
            continue
        value = float(((A + a[:, j - 1]) / (B + b[:, j - 1])).sum())
        gain = value - current
        if heap:
            top_bound, top_j = -heap[0][0], heap[0][1]
            if gain < top_bound or (gain == top_bound and top_j < j):
                heapq.heappush(heap, (-gain, j))
                continue
        A += a[:, j - 1]
        B += b[:, j - 1]
        S.append(j)
        current = value
        steps.append((j, value))
        if value > best_value:
            best_set, best_value = tuple(sorted(S)), value
    return GreedyTrace(
        steps=tuple(steps),
        final_set=tuple(sorted(S)),
        final_value=current,
        best_prefix_set=best_set,
        best_value=best_value,
    )


def brute_force_maximize(inst: MultiRatioInstance) -> SolveResult:
    """Exact optimum by enumeration; ties resolved towards the smallest bitmask."""
    guard_enumeration(inst.n)
    table = np.where(inst.region.feasible_table(inst.n), inst.value_table(), -np.inf)
    S = from_mask(int(np.argmax(table)))
    return SolveResult(set=S, value=evaluate_objective(inst, S), method="brute_force")


def single_ratio_max(r: Ratio, F: FeasibleRegion, tol: float = DEFAULT_TOL) -> SolveResult:
    """Maximise one ratio over ``F`` by Dinkelbach's parametric iteration.

    At parameter ``lam`` the linear subproblem ``max sum(a - lam*b) - lam*b0``
    is solved by taking the positive scores (the ``p`` largest under a
    cardinality bound).  ``iterates`` holds the strictly increasing sequence
    of parameters.  Knapsack regions are enumerated instead.
    """
    if isinstance(F, Knapsack):
        if r.n > MAX_ENUMERATION:
            raise UnsupportedRegion(f"knapsack single-ratio maximisation needs n <= {MAX_ENUMERATION}")
        return brute_force_maximize(MultiRatioInstance((r,), F))
    if isinstance(F, Cardinality):
        cap = F.p
    elif isinstance(F, Unconstrained):
        cap = r.n
    else:
        raise UnsupportedRegion(f"no single-ratio method for region {F!r}")

    singles = r.a / (r.b0 + r.b)
    j = int(np.argmax(singles))
    S = (j + 1,)
    lam = float(singles[j])
    lambdas = [lam]
    seen = {S}
    while True:
        scores = r.a - lam * r.b
        order = np.lexsort((np.arange(r.n), -scores))[:cap]
        pick = order[scores[order] > 0]
        sub_value = float(scores[pick].sum() - lam * r.b0)
        if sub_value <= tol * (1.0 + abs(lam)):
            break
        cand = tuple(sorted(int(i) + 1 for i in pick))
        if cand in seen:
            break
        new_lam = evaluate_ratio(r, cand)
        if new_lam <= lam:
            break
        S, lam = cand, new_lam
        seen.add(S)
        lambdas.append(lam)
    return SolveResult(set=S, value=lam, method="dinkelbach", iterates=tuple(lambdas))


def revenue_ordered_bound(r_max: float, r_min: float) -> Optional[Bound]:
    if r_min <= 0 or not math.isfinite(r_max / r_min):
        return None
    return Bound(1.0 / (1.0 + math.log(r_max / r_min)), "revenue-ordered assortments, unconstrained MMNL")


def guarantee_for(
    inst: MultiRatioInstance,
    certification,
    *,
    revenue_range: Optional[tuple] = None,
) -> Optional[Bound]:
    """Approximation factor that can be claimed for a solve of ``inst``.

    With ``revenue_range=(r_max, r_min)`` the caller is the revenue-ordered
    baseline, whose factor holds only on unconstrained instances.
    """
    if revenue_range is not None:
        if isinstance(inst.region, Unconstrained):
            return revenue_ordered_bound(*revenue_range)
        return None
    verdict = getattr(certification, "verdict", certification)
    if verdict is None:
        return None
    if Verdict(verdict) is Verdict.MONOTONE_SUBMODULAR and isinstance(inst.region, Cardinality):
        return Bound(GREEDY_CARDINALITY, "greedy on monotone submodular, cardinality constraint")
    return None
