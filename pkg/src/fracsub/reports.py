"""Result records produced by certification and the solvers."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .subsets import Subset

DEFAULT_TOL = 1e-9


class Verdict(str, enum.Enum):
    SUBMODULAR = "submodular"
    NOT_SUBMODULAR = "not_submodular"
    MONOTONE_SUBMODULAR = "monotone_submodular"
    INCONCLUSIVE = "inconclusive"

    @property
    def certified(self) -> bool:
        return self in (Verdict.SUBMODULAR, Verdict.MONOTONE_SUBMODULAR)


@dataclass(frozen=True)
class Witness:
    """A triple ``(S, i, j)`` at which a tested inequality fails.

    ``j`` is ``None`` for monotonicity witnesses (``h(S + i) < h(S)``).
    """

    S: Subset
    i: int
    j: Optional[int] = None

    def to_dict(self) -> dict:
        return {"S": list(self.S), "i": self.i, "j": self.j}


@dataclass(frozen=True)
class CertificationReport:
    verdict: Verdict
    method: str
    min_slack: float = math.inf
    witness: Optional[Witness] = None
    # True: certified monotone, False: refuted, None: unknown.
    monotone: Optional[bool] = None
    tol: float = DEFAULT_TOL
    details: dict = field(default_factory=dict)

    @property
    def marginal(self) -> bool:
        """A certified verdict whose tightest slack sits in ``[-tol, 0)``."""
        return self.verdict.certified and -self.tol <= self.min_slack < 0

    def summary(self) -> str:
        return _summary(self.verdict, self.monotone)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "summary": self.summary(),
            "method": self.method,
            "min_slack": _finite_or_none(self.min_slack),
            "marginal": self.marginal,
            "monotone": self.monotone,
            "witness": self.witness.to_dict() if self.witness else None,
            "details": self.details,
        }


@dataclass(frozen=True)
class InstanceCertification:
    reports: tuple
    verdict: Verdict
    monotone: Optional[bool]
    method: str
    sum_report: Optional[CertificationReport] = None

    def summary(self) -> str:
        return _summary(self.verdict, self.monotone)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "summary": self.summary(),
            "monotone": self.monotone,
            "method": self.method,
            "ratios": [r.to_dict() for r in self.reports],
            "sum": self.sum_report.to_dict() if self.sum_report else None,
        }


@dataclass(frozen=True)
class Bound:
    factor: float
    provenance: str

    def to_dict(self) -> dict:
        return {"factor": self.factor, "provenance": self.provenance}


@dataclass(frozen=True)
class SolveResult:
    set: Subset
    value: float
    bound: Optional[Bound] = None
    method: str = ""
    iterates: tuple = ()

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "set": list(self.set),
            "value": self.value,
            "bound": self.bound.to_dict() if self.bound else None,
        }


@dataclass(frozen=True)
class GreedyTrace:
    steps: tuple
    final_set: Subset
    final_value: float
    best_prefix_set: Subset
    best_value: float

    @property
    def order(self) -> tuple:
        return tuple(item for item, _ in self.steps)

    def to_dict(self) -> dict:
        return {
            "steps": [{"item": i, "value": v} for i, v in self.steps],
            "final_set": list(self.final_set),
            "final_value": self.final_value,
            "best_prefix_set": list(self.best_prefix_set),
            "best_value": self.best_value,
        }


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def _summary(verdict: Verdict, monotone: Optional[bool]) -> str:
    if verdict is Verdict.MONOTONE_SUBMODULAR:
        return "submodular, monotone"
    if verdict is Verdict.SUBMODULAR:
        mono = {True: "monotone", False: "not monotone", None: "monotonicity unknown"}[monotone]
        return f"submodular, {mono}"
    if verdict is Verdict.NOT_SUBMODULAR:
        return "not submodular"
    return "inconclusive"
