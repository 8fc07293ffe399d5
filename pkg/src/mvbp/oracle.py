"""Exhaustive solvers used as ground truth at desk scale.

These never approximate: an instance beyond the budget raises
:class:`BudgetExceeded` instead of returning a guess.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import BudgetExceeded
from .model import FEAS_TOL, Bin, Instance, KnapsackSelection, Packing, check_solvable


@dataclass(frozen=True)
class OracleBudget:
    max_items: int = 12
    max_incarnations: int = 4
    max_bins: int | None = None
    time_limit: float | None = None
    mmk_space: int = 10**7
    mvbp_nodes: int = 10**7
    cover_columns: int = 10**6


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.start = time.monotonic()

    def check(self):
        tl = self.budget.time_limit
        if tl is not None and time.monotonic() - self.start > tl:
            raise BudgetExceeded(f"time limit of {tl}s exceeded")


def _check_shape(inst: Instance, budget: OracleBudget):
    if inst.n > budget.max_items:
        raise BudgetExceeded(f"{inst.n} items > budget of {budget.max_items}")
    if inst.m > budget.max_incarnations:
        raise BudgetExceeded(f"{inst.m} incarnations > budget of {budget.max_incarnations}")


def exact_mmk(inst: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> KnapsackSelection:
    """Maximum-weight knapsack selection by enumerating every incarnation choice."""
    space = 1
    for it in inst.items:
        space *= len(it.incarnations) + 1
    if space > budget.mmk_space:
        raise BudgetExceeded(f"search space {space} > {budget.mmk_space}")
    clock = _Clock(budget)
    sizes, weights = inst.size_arrays, inst.weight_arrays
    best = [0.0, ()]
    chosen: list[tuple[int, int]] = []

    def rec(i, load, value):
        if i == inst.n:
            if value > best[0]:
                best[0], best[1] = value, tuple(chosen)
            return
        if i % 4 == 0:
            clock.check()
        rec(i + 1, load, value)
        for j in range(len(weights[i])):
            nl = load + sizes[i][j]
            if np.all(nl <= 1.0 + FEAS_TOL):
                chosen.append((i, j))
                rec(i + 1, nl, value + weights[i][j])
                chosen.pop()

    rec(0, np.zeros(inst.dimension), 0.0)
    return KnapsackSelection(best[1], float(best[0]))


def exact_mvbp(inst: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[Packing, float]:
    """Minimum-cost packing by branch and bound over (bin, incarnation) choices.

    Items are placed in index order and a new bin is only ever appended, so
    bins of one type appear in order of their first item; this removes the
    permutations of interchangeable bins from the search.
    """
    _check_shape(inst, budget)
    check_solvable(inst)
    clock = _Clock(budget)
    caps, w = inst.capacities, inst.bin_weights
    sizes = inst.size_arrays

    # start from the packing with every item in its own cheapest bin
    start = []
    for i in range(inst.n):
        fit = np.all(sizes[i][:, None, :] <= caps[None] + FEAS_TOL, axis=2)
        cost = np.where(fit, w[None, :], np.inf)
        j, t = np.unravel_index(np.argmin(cost), cost.shape)
        start.append(Bin(int(t), ((i, int(j)),)))
    best_bins = start
    best_cost = float(sum(w[b.bin_type] for b in start))

    types: list[int] = []
    loads: list[np.ndarray] = []
    members: list[list[tuple[int, int]]] = []
    nodes = 0

    def rec(i, cost):
        nonlocal best_bins, best_cost, nodes
        nodes += 1
        if nodes > budget.mvbp_nodes:
            raise BudgetExceeded(f"more than {budget.mvbp_nodes} search nodes")
        if nodes % 4096 == 0:
            clock.check()
        if cost >= best_cost - 1e-12:
            return
        if i == inst.n:
            best_cost = cost
            best_bins = [Bin(t, tuple(mem)) for t, mem in zip(types, members)]
            return
        for b in range(len(types)):
            for j in range(len(sizes[i])):
                nl = loads[b] + sizes[i][j]
                if np.all(nl <= caps[types[b]] + FEAS_TOL):
                    old = loads[b]
                    loads[b] = nl
                    members[b].append((i, j))
                    rec(i + 1, cost)
                    members[b].pop()
                    loads[b] = old
        if budget.max_bins is not None and len(types) >= budget.max_bins:
            return
        for t in range(inst.T):
            for j in range(len(sizes[i])):
                if np.all(sizes[i][j] <= caps[t] + FEAS_TOL):
                    types.append(t)
                    loads.append(sizes[i][j].copy())
                    members.append([(i, j)])
                    rec(i + 1, cost + w[t])
                    members.pop()
                    loads.pop()
                    types.pop()

    # the starting packing is feasible; a strictly cheaper one replaces it
    rec(0, 0.0)
    return Packing(tuple(best_bins)), float(best_cost)


def column_universe(inst: Instance, budget: OracleBudget = DEFAULT_BUDGET):
    """Every compatible (bin type, item set, incarnation map) triple."""
    caps = inst.capacities
    sizes = inst.size_arrays
    out = []
    clock = _Clock(budget)

    for t in range(inst.T):
        chosen: list[tuple[int, int]] = []

        def rec(start, load):
            for i in range(start, inst.n):
                for j in range(len(sizes[i])):
                    nl = load + sizes[i][j]
                    if np.all(nl <= caps[t] + FEAS_TOL):
                        chosen.append((i, j))
                        out.append((t, tuple(chosen)))
                        if len(out) > budget.cover_columns:
                            raise BudgetExceeded(f"more than {budget.cover_columns} columns")
                        if len(out) % 4096 == 0:
                            clock.check()
                        rec(i + 1, nl)
                        chosen.pop()

        rec(0, np.zeros(inst.dimension))
    return out


def exact_cover_lp(inst: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """Optimum of the covering LP over the full column universe."""
    _check_shape(inst, budget)
    check_solvable(inst)
    if inst.n == 0:
        return 0.0
    # columns with the same type and item set are identical in the LP
    sets = {}
    for t, pairs in column_universe(inst, budget):
        sets.setdefault((t, tuple(i for i, _ in pairs)), None)
    keys = list(sets)
    A = np.zeros((inst.n, len(keys)))
    for k, (_, items) in enumerate(keys):
        A[list(items), k] = 1.0
    c = np.array([inst.bin_weights[t] for t, _ in keys])
    res = lp.solve(lp.LpProblem("min", c, A, [lp.GE] * inst.n, np.ones(inst.n)))
    if not res.optimal:
        raise lp.NumericalInstability(f"full-universe LP came back {res.status}")
    return res.objective
