"""Submodularity certificates and greedy solvers for sums of linear ratios over 0-1 sets."""
from .assortment import (
    MMNLInstance,
    alpha,
    check_cardinality_ratio_condition,
    check_revenue_spread,
    choice_probability,
    expected_revenue,
    is_value_conscious,
    no_purchase_probability,
    purchase_probability,
    revenue_ordered_baseline,
    to_multiratio,
)
from .certification import (
    certify_instance,
    certify_ratio,
    check_homogeneous_obstruction,
    check_monotone_definition,
    check_monotone_sufficient,
    check_monotone_unconstrained,
    check_near_monotone_structure,
    check_ratio_submodular,
    check_submodular_definition,
)
from .errors import (
    EmptySet,
    FracSubError,
    GroundSetTooLarge,
    HomogeneousRatio,
    InfeasibleSet,
    InvalidInstance,
    ItemAlreadyPresent,
    ItemNotOffered,
    NotCertifiedSubmodular,
    UnsupportedRegion,
)
from .facility import (
    PChoiceInstance,
    check_pchoice_monotone,
    check_pchoice_sufficient,
    homogenize,
    market_share_objective,
    solve_pchoice,
)
from .ratio import (
    MultiRatioInstance,
    Ratio,
    RatioAccumulator,
    evaluate_objective,
    evaluate_ratio,
    extend,
    marginal_gain,
)
from .regions import Cardinality, FeasibleRegion, Knapsack, Unconstrained, contains, enumerate_feasible, extendable
from .reports import Bound, CertificationReport, GreedyTrace, InstanceCertification, SolveResult, Verdict, Witness
from .solvers import brute_force_maximize, greedy_maximize, guarantee_for, single_ratio_max

__all__ = [
    "Bound",
    "Cardinality",
    "CertificationReport",
    "EmptySet",
    "FeasibleRegion",
    "FracSubError",
    "GreedyTrace",
    "GroundSetTooLarge",
    "HomogeneousRatio",
    "InfeasibleSet",
    "InstanceCertification",
    "InvalidInstance",
    "ItemAlreadyPresent",
    "ItemNotOffered",
    "Knapsack",
    "MMNLInstance",
    "MultiRatioInstance",
    "NotCertifiedSubmodular",
    "PChoiceInstance",
    "Ratio",
    "RatioAccumulator",
    "SolveResult",
    "Unconstrained",
    "UnsupportedRegion",
    "Verdict",
    "Witness",
    "alpha",
    "brute_force_maximize",
    "certify_instance",
    "certify_ratio",
    "check_cardinality_ratio_condition",
    "check_homogeneous_obstruction",
    "check_monotone_definition",
    "check_monotone_sufficient",
    "check_monotone_unconstrained",
    "check_near_monotone_structure",
    "check_pchoice_monotone",
    "check_pchoice_sufficient",
    "check_ratio_submodular",
    "check_revenue_spread",
    "check_submodular_definition",
    "choice_probability",
    "contains",
    "enumerate_feasible",
    "evaluate_objective",
    "evaluate_ratio",
    "expected_revenue",
    "extend",
    "extendable",
    "greedy_maximize",
    "guarantee_for",
    "homogenize",
    "is_value_conscious",
    "marginal_gain",
    "market_share_objective",
    "no_purchase_probability",
    "purchase_probability",
    "revenue_ordered_baseline",
    "single_ratio_max",
    "solve_pchoice",
    "to_multiratio",
]

__version__ = "0.1.0"
