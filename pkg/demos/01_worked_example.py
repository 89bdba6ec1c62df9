"""
A submodular ratio that is not monotone
=======================================

Three items, a = (3, 2, 1), b0 = 2, b = (1, 1, 1).
"""

from fracsub import (
    MultiRatioInstance,
    Ratio,
    Unconstrained,
    certify_instance,
    check_near_monotone_structure,
    evaluate_ratio,
    greedy_maximize,
    single_ratio_max,
)

r = Ratio([3, 2, 1], 2, [1, 1, 1])

# every subset and its value
for S in [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]:
    print(f"h({set(S) or '{}'}) = {evaluate_ratio(r, S):.4f}")

# %%
# The pairwise test passes but the item ratios never dominate max h = 5/4,
# so the function is submodular without being monotone.
inst = MultiRatioInstance((r,), Unconstrained())
cert = certify_instance(inst)
print(cert.summary())
print(cert.reports[0].summary())

# fixing the item with the smallest a_i/b_i (item 3) gives monotone chains
print("near-monotone structure:", check_near_monotone_structure(r, Unconstrained()))

# %%
# Greedy keeps inserting while anything fits, so on this instance it ends
# at {1,2,3} = 6/5 after passing through {1,2} = 5/4.
trace = greedy_maximize(inst)
print("greedy steps:", trace.steps)
print("final", trace.final_set, trace.final_value, "best prefix", trace.best_prefix_set, trace.best_value)

# Dinkelbach reaches the optimum in two parameter updates
res = single_ratio_max(r, Unconstrained())
print("dinkelbach:", res.set, res.value, res.iterates)
