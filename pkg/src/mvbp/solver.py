"""LP-guided greedy covering followed by First-Fit on the leftovers.

:func:`solve_weighted` buys columns from the support of the covering LP
by dual-profit rate until their total weight reaches ``ln(2D) * OPT*``,
then packs the uncovered items with :func:`appr_pack`. The cost is at
most ``(ln 2D + 1) OPT* + sum_t w_t + w_max``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .appr import appr_pack, compute_selectors, load_duals
from .cover import EPS_LP, Column, CoverLpSolution, solve_cover_lp
from .errors import EmptySupport
from .model import Bin, Instance, Packing, check_solvable, fits_alone, packing_cost

T_MAX = 20
BOUND_TOL = 1e-6


@dataclass
class GreedyStep:
    column: int
    weight: float
    covered: tuple[int, ...]
    residual_mass: float


@dataclass
class GreedyState:
    chosen: list[Column] = field(default_factory=list)
    uncovered: set[int] = field(default_factory=set)
    weight: float = 0.0
    threshold: float = 0.0
    total_mass: float = 0.0
    steps: list[GreedyStep] = field(default_factory=list)

    @property
    def reached_threshold(self) -> bool:
        return self.weight >= self.threshold


@dataclass
class SolveReport:
    packing: Packing
    cost: float
    opt_star: float
    greedy_cost: float
    residual_cost: float
    sum_weights: float
    w_max: float
    bound: float
    bound_ok: bool
    cover: CoverLpSolution | None = None
    greedy: GreedyState | None = None
    bin_types: tuple[int, ...] = ()
    subsolves: int = 1
    fallback: bool = False

    def as_dict(self):
        return {
            "cost": self.cost,
            "opt_star": self.opt_star,
            "greedy_cost": self.greedy_cost,
            "residual_cost": self.residual_cost,
            "sum_weights": self.sum_weights,
            "w_max": self.w_max,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "bins": len(self.packing),
            "bin_types_used": list(self.bin_types),
            "subsolves": self.subsolves,
            "fallback": self.fallback,
        }


def greedy_phase(inst: Instance, cover: CoverLpSolution, y, rho: float) -> GreedyState:
    y = np.asarray(y, dtype=float)
    state = GreedyState(uncovered=set(range(inst.n)))
    state.total_mass = float(y.sum())
    state.threshold = math.log(rho) * cover.value
    if cover.value <= 0:
        return state
    support = cover.support_columns()
    while state.weight < state.threshold and state.uncovered:
        if not support:
            raise EmptySupport("LP support is empty but items remain uncovered")
        best, best_rate = None, -math.inf
        for k, col in enumerate(support):
            hit = [i for i in col.items if i in state.uncovered]
            mass = float(y[hit].sum()) if hit else 0.0
            if col.cost > 0:
                rate = mass / col.cost
            else:
                rate = math.inf if hit else 0.0
            if rate > best_rate:
                best, best_rate = k, rate
        col = support[best]
        hit = tuple(i for i in col.items if i in state.uncovered)
        state.chosen.append(col)
        state.weight += col.cost
        state.uncovered.difference_update(hit)
        state.steps.append(
            GreedyStep(cover.support[best], col.cost, hit, float(y[sorted(state.uncovered)].sum()))
        )
    return state


def cost_bound(opt_star: float, D: int, sum_weights: float, w_max: float) -> float:
    return (math.log(2 * D) + 1) * opt_star + sum_weights + w_max


def _within(cost, bound):
    return cost <= bound + BOUND_TOL * max(1.0, abs(bound))


def solve_weighted(inst: Instance, eps_lp: float = EPS_LP) -> SolveReport:
    check_solvable(inst)
    sum_w = float(inst.bin_weights.sum())
    w_max = float(inst.bin_weights.max()) if inst.T else 0.0
    if inst.n == 0:
        bound = cost_bound(0.0, inst.dimension, sum_w, w_max)
        return SolveReport(Packing(), 0.0, 0.0, 0.0, 0.0, sum_w, w_max, bound, True,
                           bin_types=tuple(range(inst.T)))
    cover = solve_cover_lp(inst, eps_lp)
    selectors = compute_selectors(inst)
    y = load_duals(inst, selectors)
    greedy = greedy_phase(inst, cover, y, 2 * inst.dimension)

    bins = []
    placed: set[int] = set()
    for col in greedy.chosen:
        kept = tuple((i, j) for i, j in col.pairs() if i not in placed)
        placed.update(i for i, _ in kept)
        bins.append(Bin(col.bin_type, kept))
    greedy_cost = float(sum(col.cost for col in greedy.chosen))
    residual = appr_pack(inst, sorted(greedy.uncovered), selectors=selectors)
    packing = Packing(tuple(bins) + residual.bins)
    residual_cost = packing_cost(inst, residual)
    cost = packing_cost(inst, packing)
    bound = cost_bound(cover.value, inst.dimension, sum_w, w_max)
    return SolveReport(
        packing, cost, cover.value, greedy_cost, residual_cost, sum_w, w_max, bound,
        _within(cost, bound), cover, greedy, tuple(range(inst.T)),
    )


def unweighted_bound(opt_star: float, D: int, T: int) -> float:
    return (math.log(2 * D) + 1) * opt_star + T + 1


def solve_unweighted(inst: Instance, eps_lp: float = EPS_LP) -> SolveReport:
    """Bin count is at most ``(ln 2D + 1) OPT* + T + 1``."""
    if any(bt.weight != 1.0 for bt in inst.bin_types):
        raise ValueError("solve_unweighted needs every bin type weight equal to 1")
    rep = solve_weighted(inst, eps_lp)
    rep.bound = unweighted_bound(rep.opt_star, inst.dimension, inst.T)
    rep.bound_ok = _within(len(rep.packing), rep.bound)
    return rep


def _remap(rep: SolveReport, types: tuple[int, ...]) -> SolveReport:
    bins = tuple(Bin(types[b.bin_type], b.assignments) for b in rep.packing.bins)
    rep.packing = Packing(bins)
    rep.bin_types = types
    return rep


def solve_weighted_wrapped(inst: Instance, eps_lp: float = EPS_LP, t_max: int = T_MAX) -> SolveReport:
    """Best :func:`solve_weighted` over every nonempty subset of bin types."""
    check_solvable(inst)
    if inst.T > t_max:
        rep = solve_weighted(inst, eps_lp)
        rep.fallback = True
        return rep
    fits = [fits_alone(inst, i).any(axis=0) for i in range(inst.n)]
    best = None
    runs = 0
    for k in range(1, inst.T + 1):
        for types in itertools.combinations(range(inst.T), k):
            if not all(f[list(types)].any() for f in fits):
                continue
            sub = inst.with_bin_types([inst.bin_types[t] for t in types])
            rep = _remap(solve_weighted(sub, eps_lp), types)
            runs += 1
            if best is None or rep.cost < best.cost:
                best = rep
    best.subsolves = runs
    return best
