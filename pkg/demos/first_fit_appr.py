"""
First-Fit on effective loads
============================

APPR gives every item one incarnation and one bin type ahead of time,
turns its size into a scalar load, and runs First-Fit per bin type. The
item duals y_i = (weighted load) / D make the cost bound hold for every
subset of items at once.
"""

import numpy as np

from mvbp import appr_pack, compute_selectors, first_fit, load_duals, packing_cost
from mvbp.appr import oblivious_bound
from mvbp.instances import e1

# Scalar First-Fit: every bin except perhaps one ends more than half full
sizes = [0.6, 0.6, 0.4, 0.4, 0.3, 0.2, 0.7]
bins = first_fit(sizes)
print("first-fit bins:", bins)
print("levels:", [round(sum(sizes[i] for i in b), 2) for b in bins])

# The two-dimensional example with two bin types
inst = e1()
for i, s in enumerate(compute_selectors(inst)):
    print(f"item {i}: incarnation {s.incarnation}, bin type {s.bin_type}, load {s.effective_load:.2f}")

y = load_duals(inst)
print("duals:", y)
packing = appr_pack(inst)
print("APPR cost:", packing_cost(inst, packing), "bound:", oblivious_bound(inst, y, range(inst.n)))

# The same duals bound every subset
rng = np.random.default_rng(0)
for _ in range(3):
    S = sorted(int(i) for i in rng.choice(inst.n, 2, replace=False))
    print(f"subset {S}: cost {packing_cost(inst, appr_pack(inst, S))}, bound {oblivious_bound(inst, y, S):.2f}")
