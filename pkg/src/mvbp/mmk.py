"""PTAS for the multiple-choice multidimensional knapsack.

Guess the ``q = min(n, ceil(D / eps))`` heaviest chosen incarnations,
solve the LP over the remaining items with every incarnation heavier than
the lightest guessed one switched off, round the basic optimum down, and
keep the best rounded selection over all guesses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import lp
from .model import FEAS_TOL, Incarnation, Instance, Item, KnapsackSelection

INT_TOL = 1e-6


@dataclass(frozen=True)
class Guess:
    items: tuple[int, ...] = ()
    incarnations: tuple[int, ...] = ()

    def __len__(self):
        return len(self.items)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(zip(self.items, self.incarnations))

    @property
    def rank(self):
        """Sort key reproducing the enumeration order of :func:`enumerate_guesses`."""
        return (len(self.items), self.items, self.incarnations)


@dataclass
class RestrictedMmkLp:
    guess: Guess
    residual: np.ndarray
    threshold: float
    variables: list[tuple[int, int]]
    item_rows: list[int]
    problem: lp.LpProblem | None
    fixed_value: float


@dataclass
class GuessRecord:
    guess: Guess
    value: float
    lp_value: float
    fractional_entries: int
    fractional_items: int
    lp_rows: int
    support: int


@dataclass
class MmkTrace:
    """Per-guess diagnostics filled in by :func:`solve_mmk`."""

    q: int = 0
    records: list[GuessRecord] = field(default_factory=list)
    rejected: int = 0
    pruned: int = 0


def guess_size(n: int, D: int, eps: float) -> int:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return min(n, math.ceil(D / eps))


def enumerate_guesses(inst: Instance, q: int) -> Iterator[Guess]:
    """Every (G, g) with |G| <= q, by size, then item set, then incarnation map."""
    n = inst.n
    counts = [len(it.incarnations) for it in inst.items]
    for k in range(min(q, n) + 1):
        for G in itertools.combinations(range(n), k):
            for g in itertools.product(*(range(counts[i]) for i in G)):
                yield Guess(G, tuple(g))


def build_restricted_lp(inst: Instance, guess: Guess) -> RestrictedMmkLp | None:
    """The LP with the guess fixed in, or None when the guess overflows the knapsack."""
    D = inst.dimension
    residual = np.ones(D)
    fixed_value = 0.0
    for i, j in zip(guess.items, guess.incarnations):
        residual = residual - inst.size_arrays[i][j]
        fixed_value += inst.weight_arrays[i][j]
    if np.any(residual < -FEAS_TOL):
        return None
    residual = np.maximum(residual, 0.0)
    threshold = (
        min(inst.weight_arrays[i][j] for i, j in zip(guess.items, guess.incarnations))
        if guess.items
        else math.inf
    )
    in_guess = set(guess.items)
    variables = []
    item_rows = []
    for i in range(inst.n):
        if i in in_guess:
            continue
        free = np.flatnonzero(inst.weight_arrays[i] <= threshold)
        if free.size:
            item_rows.append(i)
            variables.extend((i, int(j)) for j in free)
    problem = None
    if variables:
        nv = len(variables)
        A = np.zeros((D + len(item_rows), nv))
        c = np.empty(nv)
        row_of = {i: D + r for r, i in enumerate(item_rows)}
        for v, (i, j) in enumerate(variables):
            A[:D, v] = inst.size_arrays[i][j]
            A[row_of[i], v] = 1.0
            c[v] = inst.weight_arrays[i][j]
        b = np.concatenate([residual, np.ones(len(item_rows))])
        problem = lp.LpProblem("max", c, A, [lp.LE] * len(b), b)
    return RestrictedMmkLp(guess, residual, threshold, variables, item_rows, problem, fixed_value)


def round_down(inst: Instance, restricted: RestrictedMmkLp, result: lp.LpResult | None) -> KnapsackSelection:
    chosen = list(zip(restricted.guess.items, restricted.guess.incarnations))
    if result is not None:
        for v in np.flatnonzero(result.x >= 1.0 - INT_TOL):
            chosen.append(restricted.variables[v])
    chosen.sort()
    value = float(sum(inst.weight_arrays[i][j] for i, j in chosen))
    return KnapsackSelection(tuple(chosen), value)


def fractionality(restricted: RestrictedMmkLp, result: lp.LpResult | None) -> tuple[int, int]:
    """(non-integral item variables, items carrying a non-integral variable)."""
    if result is None:
        return 0, 0
    x = result.x
    frac = np.flatnonzero((x > INT_TOL) & (x < 1.0 - INT_TOL))
    items = {restricted.variables[v][0] for v in frac}
    return int(frac.size), len(items)


def _upper_bound(inst: Instance, restricted_items, threshold, fixed_value):
    ub = fixed_value
    for i in restricted_items:
        w = inst.weight_arrays[i]
        w = w[w <= threshold]
        if w.size:
            ub += w.max()
    return ub


def solve_mmk(
    inst: Instance,
    eps: float = 1.0,
    trace: MmkTrace | None = None,
    prune: bool = False,
) -> KnapsackSelection:
    """Best rounded LP selection over all guesses of the heaviest incarnations.

    Sizes are measured against a unit knapsack; any bin types on ``inst``
    are ignored. With ``prune=True`` a guess whose trivial weight bound
    cannot beat the incumbent skips its LP; the returned selection is the
    same as without pruning.
    """
    q = guess_size(inst.n, inst.dimension, eps)
    if trace is not None:
        trace.q = q
    best = KnapsackSelection()
    best_rank = Guess().rank
    best_found = False

    n = inst.n
    sizes = inst.size_arrays
    weights = inst.weight_arrays

    def visit(G, g):
        nonlocal best, best_rank, best_found
        guess = Guess(tuple(G), tuple(g))
        if prune and best_found:
            threshold = min((weights[i][j] for i, j in zip(G, g)), default=math.inf)
            fixed = sum(weights[i][j] for i, j in zip(G, g))
            ub = _upper_bound(inst, (i for i in range(n) if i not in G), threshold, fixed)
            if ub < best.value - 1e-9 * max(1.0, abs(best.value)):
                if trace is not None:
                    trace.pruned += 1
                return
        restricted = build_restricted_lp(inst, guess)
        result = None
        if restricted.problem is not None:
            result = lp.solve(restricted.problem)
            if not result.optimal:
                raise lp.NumericalInstability(f"restricted knapsack LP came back {result.status}")
        sel = round_down(inst, restricted, result)
        if trace is not None:
            fe, fi = fractionality(restricted, result)
            trace.records.append(
                GuessRecord(
                    guess,
                    sel.value,
                    restricted.fixed_value + (result.objective if result is not None else 0.0),
                    fe,
                    fi,
                    0 if restricted.problem is None else len(restricted.problem.b),
                    0 if result is None else int(result.support(INT_TOL).size),
                )
            )
        rank = guess.rank
        if not best_found or sel.value > best.value or (sel.value == best.value and rank < best_rank):
            best, best_rank, best_found = sel, rank, True

    # depth-first over item sets; an overflowing guess has only overflowing supersets
    def extend(G, g, residual, start):
        visit(G, g)
        if len(G) >= q:
            return
        for i in range(start, n):
            for j in range(len(weights[i])):
                r = residual - sizes[i][j]
                if np.any(r < -FEAS_TOL):
                    if trace is not None:
                        trace.rejected += 1
                    continue
                G.append(i)
                g.append(j)
                extend(G, g, r, i + 1)
                G.pop()
                g.pop()

    extend([], [], np.ones(inst.dimension), 0)
    return best


def rescale_for_bin(inst: Instance, t: int, profits) -> Instance:
    """Knapsack view of bin type ``t``: sizes divided by its capacities, item i worth ``profits[i]``."""
    cap = inst.capacities[t]
    items = []
    for i, it in enumerate(inst.items):
        p = float(profits[i])
        items.append(
            Item(tuple(Incarnation(tuple(np.asarray(inc.sizes) / cap), p) for inc in it.incarnations))
        )
    return Instance(inst.dimension, tuple(items), ())
