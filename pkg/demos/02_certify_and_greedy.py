"""
Certifying random ratios and running greedy
===========================================

How often random ratios are submodular, and how greedy does on the
monotone ones.
"""

import numpy as np

from fracsub import Verdict, brute_force_maximize, certify_instance, greedy_maximize
from fracsub.generate import random_multiratio

rng = np.random.default_rng(0)

# %%
# Wide item-ratio spread against a narrow one.  Narrow spread with a sizeable
# b0 makes min a_i/b_i exceed every attainable value, so h is monotone.
for label, kw in [("wide", {}), ("narrow", {"ratio_spread": 0.3, "b0_range": (1.0, 10.0)})]:
    counts = {v: 0 for v in Verdict}
    for _ in range(200):
        inst = random_multiratio(rng, 8, 1, "cardinality", **kw)
        counts[certify_instance(inst).verdict] += 1
    print(label, {v.value: c for v, c in counts.items()})

# %%
# Greedy against brute force on monotone submodular instances with |S| <= p
ratios = []
while len(ratios) < 100:
    inst = random_multiratio(rng, 12, 3, "cardinality", ratio_spread=0.5, b0_range=(1.0, 10.0))
    if certify_instance(inst).verdict is not Verdict.MONOTONE_SUBMODULAR:
        continue
    ratios.append(greedy_maximize(inst).final_value / brute_force_maximize(inst).value)

ratios = np.array(ratios)
print(f"greedy / optimum: min {ratios.min():.4f}, mean {ratios.mean():.4f}, "
      f"guarantee {1 - 1 / np.e:.4f}")
