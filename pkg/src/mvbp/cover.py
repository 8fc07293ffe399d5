"""Column generation for the LP relaxation of the set-cover formulation.

The master LP is ``min sum_C w_C x_C`` subject to every item being covered
at least once. Its row duals are priced by the knapsack PTAS, run once per
bin type on sizes rescaled to that type's capacities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import lp
from .appr import compute_selectors
from .errors import IterationLimit
from .mmk import rescale_for_bin, solve_mmk
from .model import FEAS_TOL, Instance

log = logging.getLogger(__name__)

EPS_LP = 0.1


@dataclass(frozen=True)
class Column:
    bin_type: int
    items: tuple[int, ...]
    assignment: tuple[int, ...]
    cost: float

    @property
    def key(self):
        return (self.bin_type, self.items, self.assignment)

    def pairs(self):
        return tuple(zip(self.items, self.assignment))


@dataclass
class CoverLpSolution:
    columns: list[Column]
    x: np.ndarray
    value: float
    y: np.ndarray
    eps_lp: float
    history: list[float] = field(default_factory=list)
    support: list[int] = field(default_factory=list)

    def support_columns(self) -> list[Column]:
        return [self.columns[k] for k in self.support]


def column_loads(inst: Instance, col: Column) -> np.ndarray:
    load = np.zeros(inst.dimension)
    for i, j in col.pairs():
        load += inst.size_arrays[i][j]
    return load


def is_compatible(inst: Instance, col: Column, tol: float = FEAS_TOL) -> bool:
    return bool(np.all(column_loads(inst, col) <= inst.capacities[col.bin_type] + tol))


def initial_columns(inst: Instance) -> list[Column]:
    """One singleton column per item, at its First-Fit selector pair."""
    sel = compute_selectors(inst)
    return [
        Column(s.bin_type, (i,), (s.incarnation,), float(inst.bin_weights[s.bin_type]))
        for i, s in enumerate(sel)
    ]


def separate(inst: Instance, y, eps_sep: float = EPS_LP) -> Column | None:
    """A column whose dual profit exceeds its cost, or None.

    Items with zero profit and incarnations that cannot fit alone in the
    bin type are left out of the knapsack; neither changes its optimum.
    """
    y = np.asarray(y, dtype=float)
    best = None
    best_gain = 0.0
    for t in range(inst.T):
        keep = []
        for i in range(inst.n):
            if y[i] <= 0:
                continue
            fit = np.flatnonzero(np.all(inst.size_arrays[i] <= inst.capacities[t] + FEAS_TOL, axis=1))
            if fit.size:
                keep.append((i, fit))
        if not keep:
            continue
        sub = inst.restrict([i for i, _ in keep])
        items = []
        for (i, fit), it in zip(keep, sub.items):
            items.append(type(it)(tuple(it.incarnations[j] for j in fit)))
        sub = Instance(inst.dimension, tuple(items), inst.bin_types)
        knap = rescale_for_bin(sub, t, [y[i] for i, _ in keep])
        sel = solve_mmk(knap, eps_sep, prune=True)
        w = float(inst.bin_weights[t])
        if sel.value <= w * (1.0 + lp.LP_TOL) + (lp.LP_TOL if w == 0 else 0.0):
            continue
        gain = sel.value - w
        if best is None or gain > best_gain:
            pairs = sorted((keep[k][0], int(keep[k][1][j])) for k, j in sel.chosen)
            best = Column(t, tuple(i for i, _ in pairs), tuple(j for _, j in pairs), w)
            best_gain = gain
    return best


def master_problem(inst: Instance, columns: list[Column]) -> lp.LpProblem:
    A = np.zeros((inst.n, len(columns)))
    for k, col in enumerate(columns):
        A[list(col.items), k] = 1.0
    c = np.array([col.cost for col in columns])
    return lp.LpProblem("min", c, A, [lp.GE] * inst.n, np.ones(inst.n))


def solve_cover_lp(inst: Instance, eps_lp: float = EPS_LP, max_columns: int | None = None) -> CoverLpSolution:
    columns = initial_columns(inst)
    if inst.n == 0:
        return CoverLpSolution([], np.zeros(0), 0.0, np.zeros(0), eps_lp, [0.0], [])
    seen = {c.key for c in columns}
    limit = max_columns if max_columns is not None else 50 * inst.n * inst.T
    added = 0
    history = []
    while True:
        res = lp.solve(master_problem(inst, columns))
        if not res.optimal:
            raise lp.NumericalInstability(f"master LP came back {res.status}")
        history.append(res.objective)
        y = np.maximum(lp.duals_of(res), 0.0)
        col = separate(inst, y, eps_lp)
        if col is None or col.key in seen:
            break
        if added >= limit:
            raise IterationLimit(limit)
        columns.append(col)
        seen.add(col.key)
        added += 1
        log.debug("round %d: master %.9g, new column %s", len(history), res.objective, col)
    support = [k for k in range(len(columns)) if res.x[k] > lp.LP_TOL]
    return CoverLpSolution(columns, res.x, res.objective, y, eps_lp, history, support)
