"""
Multiple-choice knapsack by guessing and LP rounding
====================================================

Each item offers a few incarnations. We may pick at most one incarnation
per item, the chosen sizes must fit a unit vector capacity, and we want
the largest total weight.
"""

import numpy as np

from mvbp import Instance, Item, exact_mmk, solve_mmk
from mvbp.mmk import MmkTrace

rng = np.random.default_rng(7)

# Six items in two dimensions, each with two incarnations
items = []
for _ in range(6):
    sizes = [tuple(rng.uniform(0.05, 0.6, 2)) for _ in range(2)]
    items.append(Item.of(*sizes, weights=list(rng.integers(1, 10, 2))))
inst = Instance(2, tuple(items))

# The exact answer by enumeration, for reference
value = exact_mmk(inst).value
print("exact optimum:", value)

# Smaller eps means larger guesses and a better guarantee
for eps in (1.0, 0.5, 0.25):
    trace = MmkTrace()
    sel = solve_mmk(inst, eps, trace)
    print(f"eps={eps}: value {sel.value} (guaranteed >= {value / (1 + eps):.2f}),",
          f"guess size {trace.q}, {len(trace.records)} LPs solved, {trace.rejected} guesses rejected")

# Basic LP optima leave only a few items fractional; rounding drops them
trace = MmkTrace()
solve_mmk(inst, 0.5, trace)
worst = max(trace.records, key=lambda r: r.fractional_items)
print("most fractional items in any restricted LP:", worst.fractional_items, "(dimension 2)")
