"""
Assortments under a mixture of logit segments
=============================================

Revenue is a sum of ratios, one per segment.  Two closed-form checks say
when greedy can be trusted.
"""

import numpy as np

from fracsub import (
    brute_force_maximize,
    check_cardinality_ratio_condition,
    check_revenue_spread,
    greedy_maximize,
    revenue_ordered_baseline,
    to_multiratio,
)
from fracsub.generate import random_mmnl

# %%
# In a competitive market the no-purchase option is strong and revenues are
# close, so the spread check passes.  A monopoly is the opposite case.
for preset in ("competitive", "monopoly"):
    held = 0
    for seed in range(100):
        inst = random_mmnl(np.random.default_rng(seed), 10, 1, preset=preset)
        held += check_revenue_spread(inst, 0).holds
    print(f"{preset}: spread check holds on {held}/100 instances")

# %%
rng = np.random.default_rng(3)
inst = random_mmnl(rng, 10, 3, preset="competitive", region="cardinality", p=4)
mr = to_multiratio(inst)

cond = check_cardinality_ratio_condition(inst)
print(f"r_max/r_min = {cond.lhs:.3f}, 1/alpha_max = {cond.rhs:.3f}, holds: {cond.holds}")

trace = greedy_maximize(mr)
opt = brute_force_maximize(mr)
base = revenue_ordered_baseline(inst)
print("greedy   ", trace.final_set, round(trace.final_value, 6))
print("revenue  ", base.set, round(base.value, 6))
print("optimum  ", opt.set, round(opt.value, 6))
