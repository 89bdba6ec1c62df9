"""
Choosing p facility locations
=============================

The market-share terms have no constant in the denominator, and with three
or more distinct item ratios they are never submodular.  On sets of exactly
p locations a shifted form with a positive constant gives the same values.
"""

import itertools

import numpy as np

from fracsub import (
    Unconstrained,
    check_pchoice_monotone,
    check_pchoice_sufficient,
    check_submodular_definition,
    evaluate_objective,
    homogenize,
    market_share_objective,
    solve_pchoice,
)
from fracsub.facility import homogeneous_ratios
from fracsub.generate import random_pchoice

rng = np.random.default_rng(7)
inst = random_pchoice(rng, 9, 3, 3, preset="near_uniform", delta=0.9)

# %%
raw = homogeneous_ratios(inst).ratios[0]
print("raw term:", check_submodular_definition(raw, Unconstrained(), inst.n).verdict.value)

hom = homogenize(inst)
gap = max(abs(evaluate_objective(hom, S) - market_share_objective(inst, S))
          for S in itertools.combinations(range(1, 10), 3))
print(f"largest difference over all 3-sets: {gap:.2e}")

# %%
# The closed-form test is cheap and implies the exact monotonicity test
for k in range(inst.m):
    print(k, "closed form:", check_pchoice_sufficient(inst, k),
          "exact:", check_pchoice_monotone(inst, k).holds)

rep = solve_pchoice(inst)
print("greedy", rep.result.set, round(rep.result.value, 6), "bound", rep.result.bound)
print("optimum", rep.optimum.set, round(rep.optimum.value, 6), "ratio", rep.empirical_ratio)
