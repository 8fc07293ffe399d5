"""
Covering LP, greedy columns and the residual packer
===================================================

The covering LP over compatible sets is solved by column generation with
a knapsack pricing step. Its duals drive a greedy choice of columns, and
whatever the greedy phase leaves uncovered is packed by APPR.
"""

from mvbp import exact_cover_lp, exact_mvbp, solve_cover_lp, solve_weighted, solve_weighted_wrapped
from mvbp.generate import GeneratorParams, generate
from mvbp.instances import two_families

inst = generate(GeneratorParams(n=8, m=2, D=2, T=2, capacity_lo=0.6, bin_weight_lo=0.5, bin_weight_hi=2.0, seed=3))

cover = solve_cover_lp(inst, 0.1)
print(f"covering LP: {cover.value:.4f} after {len(cover.history)} pricing rounds, {len(cover.columns)} columns")
print(f"exact LP over all compatible sets: {exact_cover_lp(inst):.4f}")

rep = solve_weighted(inst)
print(f"greedy columns cost {rep.greedy_cost:.3f}, residual bins cost {rep.residual_cost:.3f}")
print(f"total {rep.cost:.3f}, bound {rep.bound:.3f}, bound holds: {rep.bound_ok}")

_, opt = exact_mvbp(inst)
print(f"exact optimum {opt:.3f}")

# Restricting the bin types helps when a costly type drags the bound up
wrapped = solve_weighted_wrapped(inst)
print(f"best over bin-type subsets: {wrapped.cost:.3f} using types {wrapped.bin_types}")

# Two item families that each want their own bin type
fam = two_families(6)
print("two families:", solve_weighted(fam).cost, "optimum", exact_mvbp(fam)[1])
